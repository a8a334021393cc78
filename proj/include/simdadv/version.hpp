//===- simdadv/version.hpp - Library version ------------------*- C++ -*-===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

namespace simdadv {

inline constexpr const char* kVersion = "0.1.0";

} // namespace simdadv
