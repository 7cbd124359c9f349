// Copyright 2026 The gsep Authors
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

// Umbrella header.

#include "gsep/criteria.hpp"
#include "gsep/error.hpp"
#include "gsep/fixtures.hpp"
#include "gsep/graph.hpp"
#include "gsep/graph_io.hpp"
#include "gsep/harness.hpp"
#include "gsep/linalg.hpp"
#include "gsep/oracle.hpp"
#include "gsep/th1.hpp"
#include "gsep/tolerance.hpp"
#include "gsep/verdict.hpp"
