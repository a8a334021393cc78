//===- simdadv/simdadv.hpp - Umbrella header ------------------------------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include "simdadv/classify.hpp"
#include "simdadv/config.hpp"
#include "simdadv/correlate.hpp"
#include "simdadv/counters.hpp"
#include "simdadv/errors.hpp"
#include "simdadv/pipeline.hpp"
#include "simdadv/profile.hpp"
#include "simdadv/remark.hpp"
#include "simdadv/remark_yaml.hpp"
#include "simdadv/report.hpp"
#include "simdadv/version.hpp"
