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

#ifndef RIG_MLP_H_
#define RIG_MLP_H_

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rig/manifold.h"

namespace rig {

// Only smooth activations exist; a weights document naming anything else is
// rejected at load time.
enum class Activation { kTanh, kSoftplus, kIdentity };

const char* activation_name(Activation a);
// Throws ParseError for unknown or non-smooth activations (e.g. "relu").
Activation parse_activation(const std::string& name);

struct MlpLayer {
  Mat weights;  // rows = outputs, cols = inputs
  Vec bias;
  Activation activation = Activation::kTanh;
};

struct MlpWeights {
  int input_dim = 0;
  std::vector<MlpLayer> layers;
};

// Throws DimensionMismatch unless the layers chain from input_dim to a single
// output.
void validate_mlp(const MlpWeights& w);

double mlp_value(const MlpWeights& w, const Vec& x);

struct MlpEvaluation {
  double value = 0.0;
  Vec gradient;  // d value / d x, by reverse-mode accumulation
};

MlpEvaluation mlp_value_and_gradient(const MlpWeights& w, const Vec& x);

// Weights document:
//   {"input_dim": k, "layers": [{"weights": [[...]], "bias": [...],
//                                "activation": "tanh"}]}
// with row-major weight matrices. Numbers are written in shortest
// round-trip form, so load -> save -> load is bit-exact.
MlpWeights mlp_from_json(const std::string& document);
std::string mlp_to_json(const MlpWeights& w);
MlpWeights load_mlp_file(const std::filesystem::path& path);
void save_mlp_file(const MlpWeights& w, const std::filesystem::path& path);

// Functionally equivalent network with the units of hidden layer `layer`
// reordered: new unit i is old unit perm[i].
MlpWeights permute_hidden_units(const MlpWeights& w, int layer,
                                const std::vector<int>& perm);

// Functionally equivalent network with an identity-activation layer
// (W = I, b = 0) inserted after layer `after`.
MlpWeights insert_identity_layer(const MlpWeights& w, int after);

// Gaussian weights with standard deviation scale / sqrt(fan_in), Gaussian
// biases with standard deviation 0.5 * scale, hidden activation `act` and
// an identity output layer.
MlpWeights random_mlp(int input_dim, const std::vector<int>& hidden,
                      std::mt19937_64& rng, double scale = 1.0,
                      Activation act = Activation::kTanh);

}  // namespace rig

#endif  // RIG_MLP_H_
