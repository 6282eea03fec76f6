// Copyright 2026 The dynfl Authors.
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

#pragma once

#include "dynfl/exact.hpp"
#include "dynfl/fractional.hpp"
#include "dynfl/generators.hpp"
#include "dynfl/harness.hpp"
#include "dynfl/intervals.hpp"
#include "dynfl/io.hpp"
#include "dynfl/lp.hpp"
#include "dynfl/model.hpp"
#include "dynfl/random.hpp"
#include "dynfl/relaxation.hpp"
#include "dynfl/rounding.hpp"
