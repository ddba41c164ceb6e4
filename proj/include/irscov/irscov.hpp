// Copyright 2026 The irscov Authors.
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

// Umbrella header for the analytic layers of the library. The CLI layer
// (irscov/cli.hpp) is kept separate because it pulls in the option parser.

#include "irscov/channel.hpp"
#include "irscov/coverage.hpp"
#include "irscov/dist.hpp"
#include "irscov/mc.hpp"
#include "irscov/rng.hpp"
#include "irscov/specfun.hpp"
