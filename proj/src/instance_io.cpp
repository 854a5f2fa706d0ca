// Copyright 2026 The Qjump Authors
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

#include "qjump/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qjump/errors.hpp"

namespace qjump {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "qjump-instance";
constexpr int kVersion = 1;

const json& field(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("instance: missing field '" + path + key + "'");
  return *it;
}

template <typename T>
T as(const json& value, const std::string& path) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ParseError("instance: field '" + path + "' has wrong type (" + value.type_name() + ")");
  }
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) {
    throw ParseError("instance: field '" + path + "' must be a number, got " + value.type_name());
  }
  return value.get<double>();
}

int as_index(const json& value, const std::string& path) {
  if (!value.is_number_integer()) {
    throw ParseError("instance: field '" + path + "' must be an integer, got " + value.type_name());
  }
  return value.get<int>();
}

}  // namespace

std::string serialize_instance(const IsingInstance& inst) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["n"] = inst.size();
  json edges = json::array();
  for (const auto& e : inst.edges()) edges.push_back(json::array({e.j, e.k, e.coupling}));
  doc["edges"] = std::move(edges);
  doc["h"] = std::vector<double>(inst.fields().begin(), inst.fields().end());

  const auto& m = inst.metadata();
  json meta = json::object();
  meta["id"] = m.id;
  meta["generator"] = m.generator;
  if (m.seed) meta["seed"] = *m.seed;
  if (m.lattice) meta["lattice"] = {{"L", m.lattice->L}, {"mask", m.lattice->mask}};
  if (m.regular_degree) meta["regular_degree"] = *m.regular_degree;
  meta["sigma_j"] = m.sigma_j;
  meta["sigma_h"] = m.sigma_h;
  doc["metadata"] = std::move(meta);
  return doc.dump(1) + "\n";
}

IsingInstance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("instance: malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance: top level must be an object");
  if (auto it = doc.find("format"); it != doc.end() && *it != kFormat) {
    throw ParseError("instance: field 'format' is not \"" + std::string(kFormat) + "\"");
  }
  if (auto it = doc.find("version"); it != doc.end() && *it != kVersion) {
    throw ParseError("instance: unsupported version " + it->dump());
  }
  const int n = as_index(field(doc, "n", ""), "n");

  const json& edges_json = field(doc, "edges", "");
  if (!edges_json.is_array()) throw ParseError("instance: field 'edges' must be an array");
  std::vector<Edge> edges;
  edges.reserve(edges_json.size());
  for (std::size_t e = 0; e < edges_json.size(); ++e) {
    const std::string path = "edges[" + std::to_string(e) + "]";
    const json& triple = edges_json[e];
    if (!triple.is_array() || triple.size() != 3) {
      throw ParseError("instance: field '" + path + "' must be [j, k, J]");
    }
    edges.push_back({as_index(triple[0], path + "[0]"), as_index(triple[1], path + "[1]"),
                     as_number(triple[2], path + "[2]")});
  }

  const json& h_json = field(doc, "h", "");
  if (!h_json.is_array()) throw ParseError("instance: field 'h' must be an array");
  std::vector<double> fields;
  fields.reserve(h_json.size());
  for (std::size_t j = 0; j < h_json.size(); ++j) {
    fields.push_back(as_number(h_json[j], "h[" + std::to_string(j) + "]"));
  }

  InstanceMetadata meta;
  if (auto it = doc.find("metadata"); it != doc.end()) {
    const json& m = *it;
    if (!m.is_object()) throw ParseError("instance: field 'metadata' must be an object");
    if (m.contains("id")) meta.id = as<std::string>(m["id"], "metadata.id");
    if (m.contains("generator")) meta.generator = as<std::string>(m["generator"], "metadata.generator");
    if (m.contains("seed")) meta.seed = as<std::uint64_t>(m["seed"], "metadata.seed");
    if (m.contains("lattice")) {
      const json& lat = m["lattice"];
      LatticeSpec spec;
      spec.L = as_index(field(lat, "L", "metadata.lattice."), "metadata.lattice.L");
      if (lat.contains("mask")) spec.mask = as<std::vector<int>>(lat["mask"], "metadata.lattice.mask");
      meta.lattice = spec;
    }
    if (m.contains("regular_degree")) {
      meta.regular_degree = as_index(m["regular_degree"], "metadata.regular_degree");
    }
    if (m.contains("sigma_j")) meta.sigma_j = as_number(m["sigma_j"], "metadata.sigma_j");
    if (m.contains("sigma_h")) meta.sigma_h = as_number(m["sigma_h"], "metadata.sigma_h");
  }

  try {
    return IsingInstance(n, std::move(edges), std::move(fields), std::move(meta));
  } catch (const InputError& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

void save_instance(const IsingInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << serialize_instance(inst);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

IsingInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace qjump
