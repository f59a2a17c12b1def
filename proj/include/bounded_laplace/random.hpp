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

#ifndef BOUNDED_LAPLACE_RANDOM_HPP_
#define BOUNDED_LAPLACE_RANDOM_HPP_

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>

namespace bounded_laplace {

// A seedable 64-bit engine. Every sampler reads raw bits and does its own
// transformation, so output depends only on the engine state and is
// reproducible across standard library implementations.
template <typename G>
concept RandomSource =
    std::uniform_random_bit_generator<G> &&
    std::same_as<typename G::result_type, std::uint64_t> &&
    (G::min() == 0) &&
    (G::max() == std::numeric_limits<std::uint64_t>::max());

using DefaultRandomSource = std::mt19937_64;

// Uniform draw from the open interval (0, 1): the 2^-52 lattice offset by
// half a step. The largest value is 1 - 2^-53, which is exactly representable.
template <RandomSource G>
double uniform_open_unit(G& rng) {
  constexpr double kStep = 0x1p-52;
  return (static_cast<double>(rng() >> 12) + 0.5) * kStep;
}

// Unbounded Laplace(location, scale) by inversion.
template <RandomSource G>
double sample_laplace(double location, double scale, G& rng) {
  const double u = uniform_open_unit(rng);
  if (u < 0.5) return location + scale * std::log(2.0 * u);
  return location - scale * std::log(2.0 * (1.0 - u));
}

}  // namespace bounded_laplace

#endif  // BOUNDED_LAPLACE_RANDOM_HPP_
