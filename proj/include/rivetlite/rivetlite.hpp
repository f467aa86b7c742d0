// Copyright 2026 The rivetlite Authors
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

#include "rivetlite/backend.hpp"
#include "rivetlite/circuit.hpp"
#include "rivetlite/circuit_io.hpp"
#include "rivetlite/counts.hpp"
#include "rivetlite/encode.hpp"
#include "rivetlite/error.hpp"
#include "rivetlite/expr.hpp"
#include "rivetlite/layout.hpp"
#include "rivetlite/optimize.hpp"
#include "rivetlite/pauli.hpp"
#include "rivetlite/sim.hpp"
#include "rivetlite/stitch.hpp"
#include "rivetlite/transpiler.hpp"
#include "rivetlite/verify.hpp"
