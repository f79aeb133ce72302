// Copyright 2026 The qpt authors
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

#include "qpt/common.hpp"
#include "qpt/cp.hpp"
#include "qpt/errors.hpp"
#include "qpt/estimators.hpp"
#include "qpt/hadamard.hpp"
#include "qpt/io.hpp"
#include "qpt/liouville.hpp"
#include "qpt/matrix.hpp"
#include "qpt/matrix_functions.hpp"
#include "qpt/nelder_mead.hpp"
#include "qpt/reference_data.hpp"
#include "qpt/synth.hpp"
#include "qpt/version.hpp"
