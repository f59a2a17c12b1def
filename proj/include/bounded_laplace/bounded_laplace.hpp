//
// Copyright 2026 The Bounded Laplace Authors
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
//

#ifndef BOUNDED_LAPLACE_BOUNDED_LAPLACE_HPP_
#define BOUNDED_LAPLACE_BOUNDED_LAPLACE_HPP_

#include "bounded_laplace/calibration.hpp"
#include "bounded_laplace/domain.hpp"
#include "bounded_laplace/errors.hpp"
#include "bounded_laplace/mechanism.hpp"
#include "bounded_laplace/random.hpp"
#include "bounded_laplace/verification.hpp"

#endif  // BOUNDED_LAPLACE_BOUNDED_LAPLACE_HPP_
