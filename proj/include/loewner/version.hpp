// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_VERSION_HPP
#define LOEWNER_VERSION_HPP

namespace loewner {

inline constexpr const char *kVersion = "0.1.0";

} // namespace loewner

#endif
