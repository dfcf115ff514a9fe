// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_MATRIX_MARKET_HPP
#define LOEWNER_MATRIX_MARKET_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>

namespace loewner {

// Reads a real MatrixMarket file (array or coordinate, general or
// symmetric) into a dense matrix. Throws ParseError on malformed input.
Eigen::MatrixXd read_matrix_market(const std::filesystem::path &file);
Eigen::MatrixXd read_matrix_market(std::istream &in,
                                   const std::string &context);

// Writes a dense matrix in array format ("%%MatrixMarket matrix array
// real general"), full precision.
void write_matrix_market(const std::filesystem::path &file,
                         const Eigen::MatrixXd &m);

} // namespace loewner

#endif
