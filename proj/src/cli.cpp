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

#include "witnesskit/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "witnesskit/channels.hpp"
#include "witnesskit/error.hpp"
#include "witnesskit/io.hpp"
#include "witnesskit/verify.hpp"

namespace witnesskit::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kParamKeys{"alpha", "theta", "p", "strategy", "source", "rho_a", "starts"};

std::string scalar_string(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!e.is_string()) throw InvalidArgument("config: '" + key + "' entries must be strings");
      s += (s.empty() ? "" : ",") + e.get<std::string>();
    }
    return s;
  }
  throw InvalidArgument("config: '" + key + "' must be a string or number");
}

template <class T>
T get_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw InvalidArgument("config: '" + key + "' must be a number");
  return v.get<T>();
}

std::array<int, 3> parse_resolution(const std::string& text) {
  std::array<int, 3> r{};
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, 'x')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(piece, &used);
      if (used != piece.size() || v < 1) throw std::invalid_argument("bad");
      parts.push_back(v);
    } catch (const std::exception&) {
      throw InvalidArgument("--res: expected N or NxNxN with positive integers, got '" + text + "'");
    }
  }
  if (parts.size() == 1) parts = {parts[0], parts[0], parts[0]};
  if (parts.size() != 3) throw InvalidArgument("--res: expected N or NxNxN, got '" + text + "'");
  std::copy(parts.begin(), parts.end(), r.begin());
  return r;
}

double param_double(const RunConfig& c, const std::string& key, double fallback) {
  const auto it = c.params.find(key);
  if (it == c.params.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("parameter " + key + "='" + it->second + "' is not a number");
  }
}

std::string param_string(const RunConfig& c, const std::string& key, const std::string& fallback) {
  const auto it = c.params.find(key);
  return it == c.params.end() ? fallback : it->second;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

ChannelModel channel_from(const RunConfig& c) {
  const std::string kind = c.channel.value_or("identity");
  if (kind == "identity") return IdentityChannel{};
  if (kind == "unitary_rotation") return UnitaryRotation{param_double(c, "theta", 0.0)};
  if (kind == "depolarizing") return Depolarizing{param_double(c, "p", 0.0)};
  if (kind == "intercept_resend") return intercept::strategy(split_list(param_string(c, "strategy", "z,x")));
  throw InvalidArgument("unknown channel '" + kind + "'");
}

PureState source_from(const RunConfig& c, const ProtocolSpec& spec) {
  const std::string s = param_string(c, "source", "default");
  if (s == "default") return default_source(spec);
  if (s == "phi_plus" || s == "maximally_entangled") return named::phi_plus();
  if (s == "psi_minus") return named::psi_minus();
  throw InvalidArgument("unknown source '" + s + "'");
}

struct Resolved {
  ProtocolName protocol;
  ProtocolSpec spec;
  double alpha;
};

Resolved resolve_protocol(const RunConfig& c, const std::optional<std::string>& fallback) {
  std::string name = c.protocol ? *c.protocol : fallback.value_or("");
  if (name.empty()) throw InvalidArgument("--protocol is required");
  if (name == "four_state") name = "four_state_eb";
  if (c.variant && (name == "four_state_eb" || name == "four_state_pm")) {
    if (*c.variant == "eb")
      name = "four_state_eb";
    else if (*c.variant == "pm")
      name = "four_state_pm";
    else
      throw InvalidArgument("--variant must be eb or pm");
  }
  Resolved r{protocol_from_string(name), {}, param_double(c, "alpha", 0.4)};
  ProtocolParams pp;
  pp.alpha = r.alpha;
  r.spec = make_protocol(r.protocol, pp);
  return r;
}

VerifyOptions verify_options(const RunConfig& c, const ProtocolSpec& spec) {
  VerifyOptions o;
  o.tol = c.tol;
  if (c.grid_resolution) o.grid_resolution = *c.grid_resolution;
  if (c.seed) o.seed = *c.seed;
  if (c.params.count("starts")) o.two_state_starts = static_cast<int>(param_double(c, "starts", 256));
  const std::string rho_a = param_string(c, "rho_a", "protocol");
  if (rho_a == "none") {
    o.inject_fixed_rho_a = false;
  } else if (rho_a == "maximally_mixed") {
    o.fixed_rho_a = ComplexMatrix::identity(2) * Complex{0.5};
  } else if (rho_a != "protocol") {
    throw InvalidArgument("rho_a must be protocol, maximally_mixed or none");
  }
  (void)spec;
  return o;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::EntanglementProven: return kProven;
    case Verdict::NotProvable: return kNotProvable;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

void write_distribution(const std::string& path, const JointDistribution& d, const ProtocolSpec& spec) {
  const std::string ext = std::filesystem::path(path).extension().string();
  io::write_text(path, ext == ".tsv" ? io::distribution_tsv(d, spec) : io::distribution_json(d));
}

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Resolved r = resolve_protocol(c, std::nullopt);
  JointDistribution d = simulate(r.spec, source_from(c, r.spec), channel_from(c));
  if (c.samples) d = sample_distribution(d, *c.samples, c.seed.value_or(0));
  const double e = qber(d, r.spec);
  const auto it = c.output.find("distribution");
  if (it != c.output.end()) {
    write_distribution(it->second, d, r.spec);
    out << "qber: " << io::format_number(e) << "\n";
  } else {
    out << io::distribution_json(d);
    err << "qber: " << io::format_number(e) << "\n";
  }
  return 0;
}

VerificationReport run_verify(const RunConfig& c, const JointDistribution& d, const Resolved& r) {
  const VerifyOptions o = verify_options(c, r.spec);
  switch (r.protocol) {
    case ProtocolName::SixState: return verify_six_state(d, o);
    case ProtocolName::FourStateEb: return verify_four_state(d, FourStateVariant::Eb, o);
    case ProtocolName::FourStatePm: return verify_four_state(d, FourStateVariant::Pm, o);
    case ProtocolName::TwoState: return verify_two_state(d, r.alpha, o);
  }
  throw InvalidArgument("unsupported protocol");
}

int cmd_verify(const RunConfig& c, const std::string& in, std::ostream& out, std::ostream& err) {
  if (in.empty()) throw InvalidArgument("verify: --in is required");
  std::vector<std::string> warnings;
  const JointDistribution d = io::read_distribution(in, &warnings);
  const Resolved r = resolve_protocol(c, d.protocol());
  VerificationReport rep = run_verify(c, d, r);
  rep.warnings.insert(rep.warnings.begin(), warnings.begin(), warnings.end());
  const std::string text = io::report_json(rep);
  out << text;
  const auto it = c.output.find("report");
  if (it != c.output.end()) io::write_text(it->second, text);
  for (const auto& w : rep.warnings) err << "warning: " << w << "\n";
  return exit_for(rep.verdict);
}

int cmd_scan(const RunConfig& c, const std::string& in, std::ostream& out, std::ostream& err) {
  if (in.empty()) throw InvalidArgument("scan: --in is required");
  std::vector<std::string> warnings;
  const JointDistribution d = io::read_distribution(in, &warnings);
  const Resolved r = resolve_protocol(c, d.protocol());
  if (r.protocol != ProtocolName::FourStateEb && r.protocol != ProtocolName::FourStatePm)
    throw InvalidArgument("scan: four-state data required");
  const FourStateVariant v = r.protocol == ProtocolName::FourStatePm ? FourStateVariant::Pm : FourStateVariant::Eb;
  const ScanGrid g = scan_four_state(d, c.scan_resolution.value_or(std::array<int, 3>{24, 24, 24}), v,
                                     verify_options(c, r.spec));
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  const auto detected = std::count(g.detected_mask.begin(), g.detected_mask.end(), true);
  std::ostringstream summary;
  summary << "detected_fraction: " << io::format_number(g.detected_fraction()) << " (" << detected << " of "
          << g.size() << ")\n";
  const auto it = c.output.find("scan");
  if (it != c.output.end()) {
    std::ofstream f(it->second);
    if (!f) throw DataError("cannot open '" + it->second + "' for writing");
    io::write_scan_csv(f, g);
    out << summary.str();
  } else {
    io::write_scan_csv(out, g);
    err << summary.str();
  }
  return 0;
}

int cmd_qber(const RunConfig& c, const std::string& in, std::ostream& out) {
  if (in.empty()) throw InvalidArgument("qber: --in is required");
  const JointDistribution d = io::read_distribution(in);
  const Resolved r = resolve_protocol(c, d.protocol());
  check_labels(d, r.spec);
  out << "qber: " << io::format_number(qber(d, r.spec)) << "\n";
  return 0;
}

void add_param(RunConfig& c, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw InvalidArgument("--param expects k=v, got '" + kv + "'");
  const std::string key = kv.substr(0, eq);
  if (!kParamKeys.count(key)) throw InvalidArgument("unknown parameter '" + key + "'");
  c.params[key] = kv.substr(eq + 1);
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config: top level must be an object");
  RunConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "protocol") {
      c.protocol = scalar_string(v, key);
    } else if (key == "variant") {
      c.variant = scalar_string(v, key);
    } else if (key == "alpha" || key == "source" || key == "rho_a") {
      c.params[key] = scalar_string(v, key);
    } else if (key == "channel") {
      if (!v.is_object()) throw InvalidArgument("config: 'channel' must be an object");
      for (const auto& [ck, cv] : v.items()) {
        if (ck == "kind")
          c.channel = scalar_string(cv, "channel.kind");
        else if (ck == "theta" || ck == "p" || ck == "strategy")
          c.params[ck] = scalar_string(cv, "channel." + ck);
        else
          throw InvalidArgument("config: unknown key 'channel." + ck + "'");
      }
    } else if (key == "tolerances") {
      if (!v.is_object()) throw InvalidArgument("config: 'tolerances' must be an object");
      const std::map<std::string, double Tolerances::*> fields{
          {"hermitian", &Tolerances::hermitian},   {"zero", &Tolerances::zero},
          {"reconstruction", &Tolerances::reconstruction}, {"jacobi_offdiag", &Tolerances::jacobi_offdiag},
          {"detect", &Tolerances::detect},         {"state", &Tolerances::state},
          {"marginal", &Tolerances::marginal},     {"entangled", &Tolerances::entangled},
          {"normalization", &Tolerances::normalization}};
      for (const auto& [tk, tv] : v.items()) {
        const auto f = fields.find(tk);
        if (f == fields.end()) throw InvalidArgument("config: unknown key 'tolerances." + tk + "'");
        c.tol.*(f->second) = get_number<double>(tv, "tolerances." + tk);
      }
    } else if (key == "scan_resolution") {
      if (v.is_number_integer()) {
        const int n = v.get<int>();
        c.scan_resolution = std::array<int, 3>{n, n, n};
      } else if (v.is_array() && v.size() == 3) {
        c.scan_resolution = std::array<int, 3>{get_number<int>(v[0], key), get_number<int>(v[1], key),
                                               get_number<int>(v[2], key)};
      } else {
        throw InvalidArgument("config: 'scan_resolution' must be an integer or three integers");
      }
    } else if (key == "grid_resolution") {
      c.grid_resolution = get_number<int>(v, key);
    } else if (key == "seed") {
      c.seed = get_number<std::uint64_t>(v, key);
    } else if (key == "samples") {
      c.samples = get_number<std::uint64_t>(v, key);
    } else if (key == "output") {
      if (!v.is_object()) throw InvalidArgument("config: 'output' must be an object");
      for (const auto& [ok, ov] : v.items()) {
        if (ok != "distribution" && ok != "report" && ok != "scan")
          throw InvalidArgument("config: unknown key 'output." + ok + "'");
        c.output[ok] = scalar_string(ov, "output." + ok);
      }
    } else {
      throw InvalidArgument("config: unknown key '" + key + "'");
    }
  }
  return c;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"witnesskit: entanglement verification from QKD correlation data", "witnesskit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<double> tol_detect;
  std::optional<std::uint64_t> seed, samples;
  std::vector<std::string> params;
  app.add_option("--config", config_path, "RunConfig JSON file");
  app.add_option("--tol-detect", tol_detect, "detection threshold (value < -tol counts as detected)");
  app.add_option("--seed", seed, "seed for sampling and the two-state multistart");
  app.add_option("--samples", samples, "finite-sample mode: number of detection events");
  app.add_option("--param", params, "k=v parameter (alpha, theta, p, strategy, source, rho_a, starts)");

  std::string protocol, variant, channel, in, out_path, res;
  auto* sim = app.add_subcommand("simulate", "simulate a channel and write P(A,B)");
  sim->add_option("--protocol", protocol, "six_state, four_state_eb, four_state_pm, two_state");
  sim->add_option("--channel", channel, "identity, unitary_rotation, depolarizing, intercept_resend");
  sim->add_option("--out", out_path, "output file (.json or .tsv)");

  auto* ver = app.add_subcommand("verify", "decide whether P(A,B) certifies entanglement");
  ver->add_option("--protocol", protocol, "protocol (defaults to the file's label)");
  ver->add_option("--variant", variant, "eb or pm for four-state data");
  ver->add_option("--in", in, "distribution file")->required();
  ver->add_option("--res", res, "four-state grid points per axis");
  ver->add_option("--out", out_path, "also write the report to this file");

  auto* scan = app.add_subcommand("scan", "four-state witness scan over (phi, psi, theta)");
  scan->add_option("--protocol", protocol, "four_state_eb or four_state_pm");
  scan->add_option("--variant", variant, "eb or pm");
  scan->add_option("--in", in, "distribution file")->required();
  scan->add_option("--res", res, "N or NxNxN (default 24x24x24)");
  scan->add_option("--out", out_path, "CSV output file");

  auto* qb = app.add_subcommand("qber", "sifted-key quantum bit error rate");
  qb->add_option("--protocol", protocol, "protocol (defaults to the file's label)");
  qb->add_option("--in", in, "distribution file")->required();

  std::vector<const char*> argv{"witnesskit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    RunConfig c;
    if (!config_path.empty()) c = parse_run_config(io::read_text(config_path));
    for (const auto& p : params) add_param(c, p);
    if (!protocol.empty()) c.protocol = protocol;
    if (!variant.empty()) c.variant = variant;
    if (!channel.empty()) c.channel = channel;
    if (tol_detect) c.tol.detect = *tol_detect;
    if (seed) c.seed = *seed;
    if (samples) c.samples = *samples;
    if (!res.empty()) {
      const auto r = parse_resolution(res);
      c.scan_resolution = r;
      c.grid_resolution = r[0];
    }

    if (sim->parsed()) {
      if (!out_path.empty()) c.output["distribution"] = out_path;
      return cmd_simulate(c, out, err);
    }
    if (ver->parsed()) {
      if (!out_path.empty()) c.output["report"] = out_path;
      return cmd_verify(c, in, out, err);
    }
    if (scan->parsed()) {
      if (!out_path.empty()) c.output["scan"] = out_path;
      return cmd_scan(c, in, out, err);
    }
    return cmd_qber(c, in, out);
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const NotDetectingError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace witnesskit::cli
