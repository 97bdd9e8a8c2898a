// Copyright 2026 The RIG Authors.
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

#ifndef RIG_SRC_HALF_PLANE_H_
#define RIG_SRC_HALF_PLANE_H_

#include <complex>

namespace rig::internal {

// Unit-speed half-plane geodesic leaving i in Euclidean direction angle `a`,
// evaluated at arclength s. Writes the position and its s-derivative.
void half_plane_geodesic_from_i(double a, double s, std::complex<double>* z,
                                std::complex<double>* dz);

}  // namespace rig::internal

#endif  // RIG_SRC_HALF_PLANE_H_
