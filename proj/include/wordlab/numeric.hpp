// Copyright 2026 The wordlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace wordlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
// floor(sqrt(n)) without floating-point rounding surprises.
std::uint64_t isqrt(std::uint64_t n);
bool is_prime(std::uint64_t n);
// Saturating power; returns UINT64_MAX on overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

// 64-bit FNV-1a, used for stable digests in reports.
std::uint64_t fnv1a(const void* data, std::size_t size,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace wordlab
