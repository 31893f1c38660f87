/*
Copyright 2026 the ggec authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef GGEC_GGEC_HPP
#define GGEC_GGEC_HPP

#include "ggec/analysis.hpp"
#include "ggec/cdf_table.hpp"
#include "ggec/codec.hpp"
#include "ggec/ggd.hpp"
#include "ggec/intervals.hpp"
#include "ggec/io.hpp"
#include "ggec/math.hpp"
#include "ggec/range_coder.hpp"
#include "ggec/rng.hpp"
#include "ggec/synth.hpp"

#endif  // GGEC_GGEC_HPP
