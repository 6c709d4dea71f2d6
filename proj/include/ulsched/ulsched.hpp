// Copyright 2026 The Authors.
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

#ifndef ULSCHED_ULSCHED_HPP_
#define ULSCHED_ULSCHED_HPP_

#include "ulsched/allocation.hpp"
#include "ulsched/antenna_selection.hpp"
#include "ulsched/constraints.hpp"
#include "ulsched/errors.hpp"
#include "ulsched/ground_set.hpp"
#include "ulsched/index_set.hpp"
#include "ulsched/linalg.hpp"
#include "ulsched/oracle.hpp"
#include "ulsched/rank_functions.hpp"
#include "ulsched/scheduler.hpp"
#include "ulsched/sim.hpp"
#include "ulsched/utility.hpp"

#endif  // ULSCHED_ULSCHED_HPP_
