// Copyright 2026 The posglab Authors.
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

#include "posglab/model_io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "posglab/errors.h"

namespace posglab {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& source, const std::string& message) {
  throw ParseError(source + ": " + message);
}

const json& Field(const json& doc, const char* key, const std::string& source) {
  auto it = doc.find(key);
  if (it == doc.end()) Fail(source, std::string("missing field \"") + key + "\"");
  return *it;
}

int PositiveInt(const json& doc, const char* key, const std::string& source) {
  const json& j = Field(doc, key, source);
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    Fail(source, std::string("field \"") + key + "\" must be a positive integer");
  }
  return j.get<int>();
}

double Number(const json& j, const std::string& path, const std::string& source) {
  if (!j.is_number()) Fail(source, path + ": expected a number");
  const double value = j.get<double>();
  if (!std::isfinite(value)) Fail(source, path + ": number is not finite");
  return value;
}

// Flattens a nested array of numbers whose shape must equal `shape`.
void Flatten(const json& j, const std::vector<int>& shape, std::size_t depth,
             const std::string& path, const std::string& source, std::vector<double>& out) {
  if (depth == shape.size()) {
    out.push_back(Number(j, path, source));
    return;
  }
  if (!j.is_array()) Fail(source, path + ": expected an array");
  if (j.size() != static_cast<std::size_t>(shape[depth])) {
    Fail(source, path + ": expected " + std::to_string(shape[depth]) + " entries, got " +
                     std::to_string(j.size()));
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    Flatten(j[i], shape, depth + 1, path + "[" + std::to_string(i) + "]", source, out);
  }
}

std::vector<double> Array(const json& doc, const char* key, const std::vector<int>& shape,
                          const std::string& source) {
  std::vector<double> out;
  Flatten(Field(doc, key, source), shape, 0, key, source, out);
  return out;
}

std::string LineOf(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string Num(double value) { return json(value).dump(); }

// Writes a nested array, with the innermost level on one line.
void WriteNested(std::ostringstream& os, const std::vector<double>& flat,
                 const std::vector<int>& shape, std::size_t depth, std::size_t& pos, int indent) {
  if (depth + 1 == shape.size()) {
    os << "[";
    for (int i = 0; i < shape[depth]; ++i) os << (i ? ", " : "") << Num(flat[pos++]);
    os << "]";
    return;
  }
  os << "[\n";
  for (int i = 0; i < shape[depth]; ++i) {
    os << std::string(indent + 2, ' ');
    WriteNested(os, flat, shape, depth + 1, pos, indent + 2);
    os << (i + 1 < shape[depth] ? ",\n" : "\n");
  }
  os << std::string(indent, ' ') << "]";
}

void WriteArray(std::ostringstream& os, const char* key, const std::vector<double>& flat,
                const std::vector<int>& shape) {
  std::size_t pos = 0;
  os << "  \"" << key << "\": ";
  WriteNested(os, flat, shape, 0, pos, 2);
}

}  // namespace

GameModel ParseModelUnchecked(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Fail(source, "syntax error at " + LineOf(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  if (!doc.is_object()) Fail(source, "top level must be an object");

  GameModel m;
  const json& name = Field(doc, "name", source);
  if (!name.is_string()) Fail(source, "field \"name\" must be a string");
  m.name = name.get<std::string>();
  m.dims.nx = PositiveInt(doc, "num_states", source);
  m.dims.ny = PositiveInt(doc, "num_obs", source);
  m.dims.nu = PositiveInt(doc, "num_actions_p1", source);
  m.dims.nv = PositiveInt(doc, "num_actions_p2", source);
  const Dims& d = m.dims;
  m.kernel = Array(doc, "kernel", {d.nx, d.nu, d.nv, d.nx, d.ny}, source);
  m.cost = Array(doc, "cost", {d.nx, d.nu, d.nv}, source);
  m.initial_belief = Array(doc, "initial_belief", {d.nx}, source);

  if (auto it = doc.find("lyapunov"); it != doc.end()) {
    const json& ly = *it;
    if (!ly.is_object()) Fail(source, "field \"lyapunov\" must be an object");
    LyapunovCert cert;
    cert.V = Array(ly, "V", {d.nx}, source);
    cert.h = Array(ly, "h", {d.nx}, source);
    const json& K = Field(ly, "K", source);
    if (!K.is_array()) Fail(source, "lyapunov.K: expected an array of state indices");
    for (std::size_t i = 0; i < K.size(); ++i) {
      if (!K[i].is_number_integer()) {
        Fail(source, "lyapunov.K[" + std::to_string(i) + "]: expected an integer");
      }
      cert.K.push_back(K[i].get<int>());
    }
    cert.drift_c = Number(Field(ly, "drift_c", source), "lyapunov.drift_c", source);
    m.lyapunov = std::move(cert);
  }
  return m;
}

GameModel ParseModel(std::string_view text, const std::string& source) {
  GameModel m = ParseModelUnchecked(text, source);
  const ValidationReport report = Validate(m);
  if (!report.ok()) throw ValidationError(source + ": invalid model\n" + report.ToString());
  NormalizeInPlace(m);
  return m;
}

std::string SerializeModel(const GameModel& model) {
  for (double x : model.kernel)
    if (!std::isfinite(x)) throw ValidationError("cannot serialize non-finite kernel entry");
  for (double x : model.cost)
    if (!std::isfinite(x)) throw ValidationError("cannot serialize non-finite cost entry");

  const Dims& d = model.dims;
  std::ostringstream os;
  os << "{\n";
  os << "  \"name\": " << json(model.name).dump() << ",\n";
  os << "  \"num_states\": " << d.nx << ",\n";
  os << "  \"num_obs\": " << d.ny << ",\n";
  os << "  \"num_actions_p1\": " << d.nu << ",\n";
  os << "  \"num_actions_p2\": " << d.nv << ",\n";
  WriteArray(os, "kernel", model.kernel, {d.nx, d.nu, d.nv, d.nx, d.ny});
  os << ",\n";
  WriteArray(os, "cost", model.cost, {d.nx, d.nu, d.nv});
  os << ",\n";
  WriteArray(os, "initial_belief", model.initial_belief, {d.nx});
  if (model.lyapunov) {
    const LyapunovCert& c = *model.lyapunov;
    os << ",\n  \"lyapunov\": {\"V\": " << json(c.V).dump() << ", \"h\": " << json(c.h).dump()
       << ", \"K\": " << json(c.K).dump() << ", \"drift_c\": " << Num(c.drift_c) << "}";
  }
  os << "\n}\n";
  return os.str();
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GameModel LoadModel(const std::string& path) { return ParseModel(ReadTextFile(path), path); }

void SaveModel(const GameModel& model, const std::string& path) {
  const std::string text = SerializeModel(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << text;
  if (!out) throw Error(path + ": write failed");
}

}  // namespace posglab
