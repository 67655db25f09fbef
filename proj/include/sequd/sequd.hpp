// Copyright 2026 The sequd Authors
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

#include "sequd/b92.hpp"
#include "sequd/errors.hpp"
#include "sequd/io.hpp"
#include "sequd/linalg.hpp"
#include "sequd/neumark.hpp"
#include "sequd/rng.hpp"
#include "sequd/sequential.hpp"
#include "sequd/states.hpp"
#include "sequd/strategies.hpp"
#include "sequd/ud_povm.hpp"
