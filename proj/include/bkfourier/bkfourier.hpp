// Copyright 2026 The bkfourier Authors.
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

#ifndef BKFOURIER_BKFOURIER_HPP_
#define BKFOURIER_BKFOURIER_HPP_

#include "bkfourier/characters.hpp"
#include "bkfourier/checks.hpp"
#include "bkfourier/cyclotomic.hpp"
#include "bkfourier/field.hpp"
#include "bkfourier/groupoid.hpp"
#include "bkfourier/groups.hpp"
#include "bkfourier/kernels.hpp"
#include "bkfourier/parallel.hpp"
#include "bkfourier/quadform.hpp"
#include "bkfourier/rational.hpp"

#endif  // BKFOURIER_BKFOURIER_HPP_
