// Copyright 2026 The Prunekit Authors
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

#include <bit>
#include <cstring>

#include "json.hpp"
#include "prunekit/error.hpp"
#include "prunekit/tensor_nn.hpp"

namespace prunekit {
namespace {

using json = nlohmann::json;

constexpr char kMagic[4] = {'D', 'P', 'T', 'M'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kFixedHeader = 16;

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutU16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

std::uint32_t GetU32(std::string_view b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + i])) << (8 * i);
  }
  return v;
}

std::uint16_t GetU16(std::string_view b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    (static_cast<unsigned char>(b[at + 1]) << 8));
}

}  // namespace

std::string EncodeCheckpoint(const MlpModel& model) {
  ValidateModel(model);
  json header;
  header["format"] = "prunekit-mlp";
  header["layer_dims"] = model.layer_dims;
  header["lineage"] = model.lineage;
  header["n_parameters"] = model.ParameterCount();
  const std::string header_text = header.dump();

  std::string out(kMagic, 4);
  PutU16(out, kVersion);
  PutU16(out, 0);
  PutU32(out, static_cast<std::uint32_t>(header_text.size()));
  PutU32(out, 0);
  out += header_text;
  for (const auto& layer : model.layers) {
    for (const float w : layer.weights) PutU32(out, std::bit_cast<std::uint32_t>(w));
    for (const float b : layer.bias) PutU32(out, std::bit_cast<std::uint32_t>(b));
  }
  return out;
}

MlpModel DecodeCheckpoint(std::string_view bytes) {
  Require(bytes.size() >= kFixedHeader, ErrorKind::kTruncated,
          "checkpoint truncated: " + std::to_string(bytes.size()) + " bytes");
  Require(std::memcmp(bytes.data(), kMagic, 4) == 0, ErrorKind::kBadMagic,
          "checkpoint has bad magic (expected \"DPTM\")");
  Require(GetU16(bytes, 4) == kVersion, ErrorKind::kUnsupportedVersion,
          "unsupported checkpoint version " + std::to_string(GetU16(bytes, 4)));
  Require(GetU16(bytes, 6) == 0 && GetU32(bytes, 12) == 0,
          ErrorKind::kInvalidHeader, "checkpoint reserved fields are non-zero");
  const std::uint32_t header_size = GetU32(bytes, 8);
  Require(bytes.size() >= kFixedHeader + header_size, ErrorKind::kTruncated,
          "checkpoint truncated inside the JSON header");

  json header;
  try {
    header = json::parse(bytes.substr(kFixedHeader, header_size));
  } catch (const json::parse_error& e) {
    Fail(ErrorKind::kSchema, std::string("checkpoint header: ") + e.what());
  }
  Require(header.is_object() && header.value("format", "") == "prunekit-mlp" &&
              header.contains("layer_dims") && header["layer_dims"].is_array(),
          ErrorKind::kSchema, "checkpoint header is not a prunekit-mlp header");

  MlpModel model;
  for (const auto& d : header["layer_dims"]) {
    Require(d.is_number_unsigned() && d.get<std::uint64_t>() > 0 &&
                d.get<std::uint64_t>() <= UINT32_MAX,
            ErrorKind::kSchema, "checkpoint layer_dims must be positive integers");
    model.layer_dims.push_back(d.get<std::uint32_t>());
  }
  Require(model.layer_dims.size() >= 2, ErrorKind::kSchema,
          "checkpoint needs at least two layer dims");
  if (header.contains("lineage")) {
    for (const auto& entry : header["lineage"]) {
      Require(entry.is_string(), ErrorKind::kSchema, "checkpoint lineage entries must be strings");
      model.lineage.push_back(entry.get<std::string>());
    }
  }

  std::size_t expected = kFixedHeader + header_size;
  for (std::size_t l = 0; l + 1 < model.layer_dims.size(); ++l) {
    expected += 4 * (static_cast<std::size_t>(model.layer_dims[l]) + 1) *
                model.layer_dims[l + 1];
  }
  Require(bytes.size() >= expected, ErrorKind::kTruncated,
          "checkpoint truncated: expected " + std::to_string(expected) +
              " bytes, got " + std::to_string(bytes.size()));
  Require(bytes.size() == expected, ErrorKind::kLengthMismatch,
          "checkpoint length mismatch: expected " + std::to_string(expected) +
              " bytes, got " + std::to_string(bytes.size()));

  std::size_t at = kFixedHeader + header_size;
  auto next = [&]() {
    const float f = std::bit_cast<float>(GetU32(bytes, at));
    at += 4;
    return f;
  };
  for (std::size_t l = 0; l + 1 < model.layer_dims.size(); ++l) {
    DenseLayer layer;
    layer.in = model.layer_dims[l];
    layer.out = model.layer_dims[l + 1];
    layer.weights.resize(static_cast<std::size_t>(layer.in) * layer.out);
    layer.bias.resize(layer.out);
    for (float& w : layer.weights) w = next();
    for (float& b : layer.bias) b = next();
    model.layers.push_back(std::move(layer));
  }
  ValidateModel(model);
  return model;
}

void WriteCheckpoint(const std::filesystem::path& path, const MlpModel& model) {
  WriteFileBytes(path, EncodeCheckpoint(model));
}

MlpModel ReadCheckpoint(const std::filesystem::path& path) {
  return DecodeCheckpoint(ReadFileBytes(path));
}

}  // namespace prunekit
