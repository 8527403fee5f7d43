// Copyright 2026 The sepcheck Authors
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

// Umbrella header for the numerical core. The CLI and report headers are
// separate because they pull in the vendored CLI11 and JSON headers.

#pragma once

#include "sepcheck/classify.hpp"
#include "sepcheck/criterion.hpp"
#include "sepcheck/decomposer.hpp"
#include "sepcheck/density.hpp"
#include "sepcheck/errors.hpp"
#include "sepcheck/matcore.hpp"
#include "sepcheck/pairgen.hpp"
#include "sepcheck/search.hpp"
#include "sepcheck/state_io.hpp"
#include "sepcheck/states.hpp"
