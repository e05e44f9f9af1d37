// Copyright 2026 The possim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "possim/bcir.hpp"
#include "possim/compile.hpp"
#include "possim/error.hpp"
#include "possim/f2.hpp"
#include "possim/hlf.hpp"
#include "possim/qcir.hpp"
#include "possim/sv.hpp"
#include "possim/tableau.hpp"
#include "possim/verify.hpp"
