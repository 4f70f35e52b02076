// Copyright 2026 The witnesskit Authors
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

#include "witnesskit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "witnesskit/error.hpp"

namespace witnesskit::io {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  if (line.find('\t') != std::string::npos) {
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) out.push_back(trim(f));
  } else {
    std::stringstream ss(line);
    std::string f;
    while (ss >> f) out.push_back(f);
  }
  return out;
}

// Rescales near-normalized tables, rejects the rest via JointDistribution.
JointDistribution finish(std::string protocol, std::map<JointDistribution::Key, double> table,
                         std::vector<std::string>* warnings) {
  double total = 0.0;
  for (const auto& [k, p] : table) {
    if (!std::isfinite(p)) throw DataError("distribution entry " + k.first + "|" + k.second + " is not finite");
    total += p;
  }
  const double dev = std::abs(total - 1.0);
  if (dev > kDefaultTolerances.normalization && dev <= kRenormalizeTolerance && total > 0.0) {
    for (auto& [k, p] : table) p /= total;
    if (warnings) warnings->push_back("distribution entries summed to " + format_number(total) + "; renormalized");
  }
  return {std::move(protocol), std::move(table)};
}

std::string infer_protocol(const std::vector<std::string>& alice, const std::vector<std::string>& bob) {
  auto has = [](const std::vector<std::string>& v, std::string_view prefix) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
  };
  if (has(bob, "c0") || has(bob, "c1") || has(bob, "null")) return "two_state";
  if (has(alice, "y") || has(bob, "y")) return "six_state";
  return "four_state_eb";
}

double rounded(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
  return std::strtod(buf, nullptr);
}

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return rounded(x);
}

json symmetric_json(const RealSymmetric2& m) { return json::array({{number(m.xx), number(m.xy)}, {number(m.xy), number(m.yy)}}); }

json params_json(const std::variant<std::monostate, FourStateParams, TwoStateParams, ComplexVector>& params) {
  if (const auto* p = std::get_if<FourStateParams>(&params))
    return {{"phi", number(p->phi)}, {"psi", number(p->psi)}, {"theta", number(p->theta)}};
  if (const auto* p = std::get_if<TwoStateParams>(&params))
    return {{"a_op", symmetric_json(p->a_op)}, {"b_op", symmetric_json(p->b_op)}, {"theta", number(p->theta)},
            {"x", number(p->x)}};
  if (const auto* v = std::get_if<ComplexVector>(&params)) {
    json amps = json::array();
    for (const Complex& z : *v) amps.push_back({number(z.real()), number(z.imag())});
    return {{"phi_e", amps}};
  }
  return nullptr;
}

}  // namespace

std::string canonical_label(std::string_view raw) {
  const std::string s = trim(raw);
  static const std::map<std::string, std::string> kKets{{"|0>", "z0"},   {"|1>", "z1"},   {"|+>", "x+"},
                                                        {"|->", "x-"},   {"|+i>", "y+"},  {"|-i>", "y-"},
                                                        {"|0⟩", "z0"}, {"|1⟩", "z1"}, {"|+⟩", "x+"},
                                                        {"|-⟩", "x-"}};
  const auto it = kKets.find(s);
  return it == kKets.end() ? s : it->second;
}

JointDistribution parse_distribution_json(std::string_view text, std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("distribution JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("distribution JSON: top level must be an object");
  for (const auto& [key, v] : doc.items())
    if (key != "protocol" && key != "table" && key != "qber")
      throw DataError("distribution JSON: unknown key '" + key + "'");
  if (!doc.contains("protocol") || !doc["protocol"].is_string())
    throw DataError("distribution JSON: missing string field 'protocol'");
  if (!doc.contains("table") || !doc["table"].is_object())
    throw DataError("distribution JSON: missing object field 'table'");
  const std::string protocol = doc["protocol"].get<std::string>();
  protocol_from_string(protocol);  // validates the name
  std::map<JointDistribution::Key, double> table;
  for (const auto& [key, v] : doc["table"].items()) {
    const auto bar = key.find('|');
    if (bar == std::string::npos || key.find('|', bar + 1) != std::string::npos)
      throw DataError("distribution JSON: key '" + key + "' must look like 'alice|bob'");
    if (!v.is_number()) throw DataError("distribution JSON: value of '" + key + "' is not a number");
    table[{key.substr(0, bar), key.substr(bar + 1)}] = v.get<double>();
  }
  return finish(protocol, std::move(table), warnings);
}

JointDistribution parse_distribution_tsv(std::string_view text, std::vector<std::string>* warnings,
                                         std::string_view protocol_hint) {
  std::string protocol(protocol_hint);
  std::vector<std::string> bob;
  std::vector<std::string> alice;
  std::map<JointDistribution::Key, double> table;
  std::stringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto pos = t.find("protocol:");
      if (pos != std::string::npos && protocol_hint.empty()) protocol = trim(std::string_view(t).substr(pos + 9));
      continue;
    }
    auto fields = split_fields(line);
    if (bob.empty()) {
      // Header: first cell names the axes (e.g. "A\B"), the rest are Bob labels.
      if (fields.size() < 2) throw DataError("TSV line " + std::to_string(lineno) + ": header needs Bob labels");
      for (std::size_t i = 1; i < fields.size(); ++i) bob.push_back(canonical_label(fields[i]));
      continue;
    }
    if (fields.size() != bob.size() + 1)
      throw DataError("TSV line " + std::to_string(lineno) + ": expected " + std::to_string(bob.size() + 1) +
                      " fields, found " + std::to_string(fields.size()));
    const std::string a = canonical_label(fields[0]);
    alice.push_back(a);
    for (std::size_t i = 0; i < bob.size(); ++i) {
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(fields[i + 1], &used);
        if (used != fields[i + 1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw DataError("TSV line " + std::to_string(lineno) + ": '" + fields[i + 1] + "' is not a number");
      }
      if (!table.emplace(JointDistribution::Key{a, bob[i]}, v).second)
        throw DataError("TSV: duplicate entry " + a + "|" + bob[i]);
    }
  }
  if (bob.empty() || alice.empty()) throw DataError("TSV: no data rows");
  if (protocol.empty()) protocol = infer_protocol(alice, bob);
  protocol_from_string(protocol);
  return finish(protocol, std::move(table), warnings);
}

JointDistribution read_distribution(const std::filesystem::path& path, std::vector<std::string>* warnings,
                                    std::string_view protocol_hint) {
  const std::string text = read_text(path);
  const std::string ext = path.extension().string();
  const std::string t = trim(text);
  const bool tsv = ext == ".tsv" || ext == ".txt" || (ext != ".json" && !t.empty() && t[0] != '{');
  if (tsv) return parse_distribution_tsv(text, warnings, protocol_hint);
  JointDistribution d = parse_distribution_json(text, warnings);
  return d;
}

std::string distribution_json(const JointDistribution& dist) {
  json table = json::object();
  for (const auto& [k, p] : dist.table()) table[k.first + "|" + k.second] = number(p);
  json doc{{"protocol", dist.protocol()}, {"table", table}};
  return doc.dump(2) + "\n";
}

std::string distribution_tsv(const JointDistribution& dist, const ProtocolSpec& spec) {
  std::ostringstream os;
  os.precision(kSignificantDigits);
  os << "# protocol: " << dist.protocol() << "\n";
  os << "A\\B";
  const auto bl = spec.bob_labels();
  for (const auto& b : bl) os << '\t' << b;
  os << '\n';
  for (const auto& a : spec.alice_labels()) {
    os << a;
    for (const auto& b : bl) os << '\t' << dist.at(a, b);
    os << '\n';
  }
  return os.str();
}

void write_scan_csv(std::ostream& out, const ScanGrid& grid) {
  out << "phi,psi,theta,value,detected\n";
  const std::size_t n1 = grid.axes[1].points.size(), n2 = grid.axes[2].points.size();
  for (std::size_t idx = 0; idx < grid.values.size(); ++idx) {
    const std::size_t i = idx / (n1 * n2), j = (idx / n2) % n1, k = idx % n2;
    out << format_number(grid.axes[0].points[i]) << ',' << format_number(grid.axes[1].points[j]) << ','
        << format_number(grid.axes[2].points[k]) << ',' << format_number(grid.values[idx]) << ','
        << (grid.detected_mask[idx] ? 1 : 0) << '\n';
  }
}

std::string report_json(const VerificationReport& r) {
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["protocol"] = r.protocol;
  doc["verdict"] = to_string(r.verdict);
  doc["best_value"] = number(r.best_value);
  doc["qber"] = number(r.qber);
  doc["warnings"] = r.warnings;
  doc["coverage"] = {{"method", r.coverage.method},   {"grid_points", r.coverage.grid_points},
                     {"starts", r.coverage.starts},   {"refined", r.coverage.refined},
                     {"skipped", r.coverage.skipped}, {"evaluations", r.coverage.evaluations}};
  if (r.best_witness) {
    const WitnessCandidate& w = *r.best_witness;
    json coeffs = json::object();
    for (const auto& [k, c] : w.pseudo_mixture.coefficients) coeffs[k.first + "|" + k.second] = number(c);
    json residual_terms = json::object();
    for (const auto& [k, c] : w.pseudo_mixture.residual_terms) residual_terms[std::string(1, "0xyz"[k])] = number(c);
    doc["best_witness"] = {{"family", to_string(w.family)},
                           {"params", params_json(w.params)},
                           {"pseudo_mixture",
                            {{"coefficients", coeffs},
                             {"residual", number(w.pseudo_mixture.residual)},
                             {"residual_terms", residual_terms}}}};
  } else {
    doc["best_witness"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return json(rounded(x)).dump();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace witnesskit::io
