// Copyright 2026 The kss-spectra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KSS_KSS_HPP
#define KSS_KSS_HPP

#include "kss/common.hpp"
#include "kss/exactcore.hpp"
#include "kss/special_functions.hpp"
#include "kss/spectra.hpp"
#include "kss/polyalg.hpp"
#include "kss/polyio.hpp"
#include "kss/ensembles.hpp"
#include "kss/quadrature.hpp"
#include "kss/montecarlo.hpp"
#include "kss/experiments.hpp"
#include "kss/report_io.hpp"
#include "kss/verification.hpp"

#endif  // KSS_KSS_HPP
