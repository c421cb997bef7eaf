// Copyright 2026 The ppovm Authors
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

#ifndef PPOVM_PPOVM_HPP
#define PPOVM_PPOVM_HPP

#include "ppovm/discrim.hpp"
#include "ppovm/error.hpp"
#include "ppovm/matcore.hpp"
#include "ppovm/process_povm.hpp"
#include "ppovm/quantum.hpp"
#include "ppovm/schemes.hpp"
#include "ppovm/tomo.hpp"

#endif  // PPOVM_PPOVM_HPP
