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

#include "rig/mlp.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rig {
namespace {

using nlohmann::json;

double activate(Activation a, double z) {
  switch (a) {
    case Activation::kTanh:
      return std::tanh(z);
    case Activation::kSoftplus:
      return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
    case Activation::kIdentity:
      return z;
  }
  return z;
}

double activate_derivative(Activation a, double z) {
  switch (a) {
    case Activation::kTanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::kSoftplus:
      // Logistic sigmoid, evaluated without overflow.
      return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z))
                      : std::exp(z) / (1.0 + std::exp(z));
    case Activation::kIdentity:
      return 1.0;
  }
  return 1.0;
}

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::kParseError, "weights document: " + what);
}

}  // namespace

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::kTanh:
      return "tanh";
    case Activation::kSoftplus:
      return "softplus";
    case Activation::kIdentity:
      return "identity";
  }
  return "unknown";
}

Activation parse_activation(const std::string& name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "softplus") return Activation::kSoftplus;
  if (name == "identity") return Activation::kIdentity;
  if (name == "relu" || name == "leaky_relu" || name == "step" ||
      name == "hard_tanh") {
    parse_error("activation \"" + name +
                "\" is not smooth; use tanh, softplus or identity");
  }
  parse_error("unknown activation \"" + name + "\"");
}

void validate_mlp(const MlpWeights& w) {
  if (w.input_dim < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "MLP input_dim must be >= 1");
  }
  if (w.layers.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "MLP has no layers");
  }
  Eigen::Index width = w.input_dim;
  for (size_t l = 0; l < w.layers.size(); ++l) {
    const MlpLayer& layer = w.layers[l];
    if (layer.weights.cols() != width) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "layer " + std::to_string(l) + " expects " +
                      std::to_string(layer.weights.cols()) +
                      " inputs but receives " + std::to_string(width));
    }
    if (layer.bias.size() != layer.weights.rows()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "layer " + std::to_string(l) + " bias has wrong length");
    }
    if (!layer.weights.allFinite() || !layer.bias.allFinite()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "layer " + std::to_string(l) + " has non-finite entries");
    }
    width = layer.weights.rows();
  }
  if (width != 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "MLP output dimension must be 1, got " + std::to_string(width));
  }
}

namespace {

void check_input(const MlpWeights& w, const Vec& x) {
  if (x.size() != w.input_dim || w.layers.empty() ||
      w.layers.front().weights.cols() != w.input_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "network takes " + std::to_string(w.input_dim) +
                    " inputs, got " + std::to_string(x.size()));
  }
}

}  // namespace

double mlp_value(const MlpWeights& w, const Vec& x) {
  check_input(w, x);
  Vec h = x;
  for (const MlpLayer& layer : w.layers) {
    Vec z = layer.weights * h + layer.bias;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      z[i] = activate(layer.activation, z[i]);
    }
    h = std::move(z);
  }
  return h[0];
}

MlpEvaluation mlp_value_and_gradient(const MlpWeights& w, const Vec& x) {
  // Forward pass keeps each layer's activation derivative for the backward
  // sweep.
  check_input(w, x);
  std::vector<Vec> slopes;
  slopes.reserve(w.layers.size());
  Vec h = x;
  for (const MlpLayer& layer : w.layers) {
    Vec z = layer.weights * h + layer.bias;
    Vec slope(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      slope[i] = activate_derivative(layer.activation, z[i]);
      z[i] = activate(layer.activation, z[i]);
    }
    slopes.push_back(std::move(slope));
    h = std::move(z);
  }
  MlpEvaluation out;
  out.value = h[0];
  Vec adjoint = Vec::Ones(1);
  for (size_t l = w.layers.size(); l-- > 0;) {
    adjoint = w.layers[l].weights.transpose() *
              adjoint.cwiseProduct(slopes[l]);
  }
  out.gradient = std::move(adjoint);
  return out;
}

MlpWeights mlp_from_json(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    parse_error(e.what());
  }
  MlpWeights w;
  try {
    if (!doc.is_object()) parse_error("top level must be an object");
    if (!doc.contains("input_dim") || !doc.contains("layers")) {
      parse_error("missing \"input_dim\" or \"layers\"");
    }
    w.input_dim = doc.at("input_dim").get<int>();
    for (const json& jl : doc.at("layers")) {
      MlpLayer layer;
      const json& rows = jl.at("weights");
      if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
        parse_error("\"weights\" must be a non-empty array of rows");
      }
      const auto r = static_cast<Eigen::Index>(rows.size());
      const auto c = static_cast<Eigen::Index>(rows[0].size());
      layer.weights.resize(r, c);
      for (Eigen::Index i = 0; i < r; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != c) {
          parse_error("ragged weight matrix");
        }
        for (Eigen::Index j = 0; j < c; ++j) {
          layer.weights(i, j) = rows[i][j].get<double>();
        }
      }
      const json& bias = jl.at("bias");
      layer.bias.resize(static_cast<Eigen::Index>(bias.size()));
      for (size_t i = 0; i < bias.size(); ++i) {
        layer.bias[static_cast<Eigen::Index>(i)] = bias[i].get<double>();
      }
      layer.activation = parse_activation(jl.at("activation").get<std::string>());
      w.layers.push_back(std::move(layer));
    }
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
  try {
    validate_mlp(w);
  } catch (const Error& e) {
    parse_error(e.what());
  }
  return w;
}

std::string mlp_to_json(const MlpWeights& w) {
  json doc;
  doc["input_dim"] = w.input_dim;
  doc["layers"] = json::array();
  for (const MlpLayer& layer : w.layers) {
    json jl;
    json rows = json::array();
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) {
        row.push_back(layer.weights(i, j));
      }
      rows.push_back(std::move(row));
    }
    jl["weights"] = std::move(rows);
    json bias = json::array();
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) {
      bias.push_back(layer.bias[i]);
    }
    jl["bias"] = std::move(bias);
    jl["activation"] = activation_name(layer.activation);
    doc["layers"].push_back(std::move(jl));
  }
  return doc.dump(2) + "\n";
}

MlpWeights load_mlp_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParseError,
                "cannot open weights file " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return mlp_from_json(ss.str());
}

void save_mlp_file(const MlpWeights& w, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot write weights file " + path.string());
  }
  out << mlp_to_json(w);
}

MlpWeights permute_hidden_units(const MlpWeights& w, int layer,
                                const std::vector<int>& perm) {
  validate_mlp(w);
  if (layer < 0 || layer + 1 >= static_cast<int>(w.layers.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "only hidden layers can be permuted");
  }
  const MlpLayer& src = w.layers[layer];
  const auto width = src.weights.rows();
  if (static_cast<Eigen::Index>(perm.size()) != width) {
    throw Error(ErrorCode::kDimensionMismatch, "permutation has wrong size");
  }
  std::vector<bool> seen(perm.size(), false);
  for (int k : perm) {
    if (k < 0 || k >= width || seen[k]) {
      throw Error(ErrorCode::kInvalidArgument, "not a permutation");
    }
    seen[k] = true;
  }
  MlpWeights out = w;
  MlpLayer& dst = out.layers[layer];
  MlpLayer& next = out.layers[layer + 1];
  for (Eigen::Index i = 0; i < width; ++i) {
    dst.weights.row(i) = src.weights.row(perm[i]);
    dst.bias[i] = src.bias[perm[i]];
    next.weights.col(i) = w.layers[layer + 1].weights.col(perm[i]);
  }
  return out;
}

MlpWeights insert_identity_layer(const MlpWeights& w, int after) {
  validate_mlp(w);
  if (after < 0 || after >= static_cast<int>(w.layers.size())) {
    throw Error(ErrorCode::kInvalidArgument, "layer index out of range");
  }
  const auto width = w.layers[after].weights.rows();
  MlpLayer identity{Mat::Identity(width, width), Vec::Zero(width),
                    Activation::kIdentity};
  MlpWeights out = w;
  out.layers.insert(out.layers.begin() + after + 1, std::move(identity));
  return out;
}

MlpWeights random_mlp(int input_dim, const std::vector<int>& hidden,
                      std::mt19937_64& rng, double scale, Activation act) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MlpWeights w;
  w.input_dim = input_dim;
  int width = input_dim;
  std::vector<int> sizes = hidden;
  sizes.push_back(1);
  for (size_t l = 0; l < sizes.size(); ++l) {
    MlpLayer layer;
    layer.weights.resize(sizes[l], width);
    layer.bias.resize(sizes[l]);
    const double sd = scale / std::sqrt(static_cast<double>(width));
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) {
        layer.weights(i, j) = sd * normal(rng);
      }
      layer.bias[i] = 0.5 * scale * normal(rng);
    }
    layer.activation = l + 1 == sizes.size() ? Activation::kIdentity : act;
    w.layers.push_back(std::move(layer));
    width = sizes[l];
  }
  return w;
}

}  // namespace rig
