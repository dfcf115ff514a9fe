// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "loewner/matrix_market.hpp"
#include "loewner/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace loewner {

namespace {

std::string lowered(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(const std::string &context, const std::string &what) {
  throw ParseError(context + ": " + what);
}

bool next_data_line(std::istream &in, std::string &line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%')
      continue;
    return true;
  }
  return false;
}

} // namespace

Eigen::MatrixXd read_matrix_market(std::istream &in,
                                   const std::string &context) {
  std::string header;
  if (!std::getline(in, header))
    fail(context, "empty file");
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (lowered(banner) != "%%matrixmarket" || lowered(object) != "matrix")
    fail(context, "missing %%MatrixMarket matrix header");
  format = lowered(format);
  field = lowered(field);
  symmetry = lowered(symmetry);
  if (field != "real" && field != "integer")
    fail(context, "unsupported field '" + field + "' (real/integer only)");
  const bool symmetric = symmetry == "symmetric";
  const bool skew = symmetry == "skew-symmetric";
  if (!symmetric && !skew && symmetry != "general")
    fail(context, "unsupported symmetry '" + symmetry + "'");

  std::string line;
  if (!next_data_line(in, line))
    fail(context, "missing size line");
  std::istringstream sz(line);

  if (format == "coordinate") {
    long rows = 0, cols = 0, nnz = 0;
    if (!(sz >> rows >> cols >> nnz) || rows <= 0 || cols <= 0 || nnz < 0)
      fail(context, "bad coordinate size line '" + line + "'");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    for (long k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line))
        fail(context, "fewer entries than announced");
      std::istringstream es(line);
      long i = 0, j = 0;
      double v = 0;
      if (!(es >> i >> j >> v) || i < 1 || i > rows || j < 1 || j > cols)
        fail(context, "bad coordinate entry '" + line + "'");
      m(i - 1, j - 1) += v;
      if ((symmetric || skew) && i != j)
        m(j - 1, i - 1) += skew ? -v : v;
    }
    return m;
  }

  if (format == "array") {
    long rows = 0, cols = 0;
    if (!(sz >> rows >> cols) || rows <= 0 || cols <= 0)
      fail(context, "bad array size line '" + line + "'");
    if ((symmetric || skew) && rows != cols)
      fail(context, "symmetric array must be square");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    // Column-major; symmetric/skew store the lower triangle only.
    for (long j = 0; j < cols; ++j) {
      for (long i = (symmetric || skew) ? j : 0; i < rows; ++i) {
        if (!next_data_line(in, line))
          fail(context, "fewer values than announced");
        std::istringstream es(line);
        double v = 0;
        if (!(es >> v))
          fail(context, "bad numeric value '" + line + "'");
        m(i, j) = v;
        if (symmetric && i != j)
          m(j, i) = v;
        if (skew && i != j)
          m(j, i) = -v;
      }
    }
    return m;
  }

  fail(context, "unsupported format '" + format + "'");
}

Eigen::MatrixXd read_matrix_market(const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in)
    throw ParseError("cannot open " + file.string());
  return read_matrix_market(in, file.string());
}

void write_matrix_market(const std::filesystem::path &file,
                         const Eigen::MatrixXd &m) {
  std::ofstream out(file);
  if (!out)
    throw ParseError("cannot open " + file.string() + " for writing");
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << " " << m.cols() << "\n";
  char buf[64];
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g\n", m(i, j));
      out << buf;
    }
}

} // namespace loewner
