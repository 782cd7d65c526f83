// Copyright 2026 The assign Authors
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

#ifndef ASSIGN_ASSIGN_HPP_
#define ASSIGN_ASSIGN_HPP_

#include "assign/bench.hpp"
#include "assign/certificate.hpp"
#include "assign/ingest.hpp"
#include "assign/model.hpp"
#include "assign/oracle.hpp"
#include "assign/solver.hpp"

#endif  // ASSIGN_ASSIGN_HPP_
