// Copyright 2026 The compda Authors
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

#pragma once

// Command-line front end. run_cli() is the whole program; main() only wires
// it to the process streams so tests can call it in-process.
//
// Exit codes: 0 success, 2 syntax/validation failure, 3 divisibility or
// parameter failure, 4 measured-vs-formula mismatch or scheme defect.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "compda/constructions.hpp"
#include "compda/engine.hpp"
#include "compda/loads.hpp"
#include "compda/pda.hpp"
#include "compda/rational.hpp"

namespace compda::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 2,
  kParameterFailure = 3,
  kMismatch = 4,
};

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& x) {
  return Json{{"exact", to_string(x)}, {"decimal", to_decimal(x)}};
}

inline Json stats_json(const PdaStats& st) {
  Json s_t = Json::object();
  for (const auto& [t, count] : st.s_t) s_t[std::to_string(t)] = count;
  Json theta = Json::object();
  for (const auto& [t, value] : st.theta) theta[std::to_string(t)] = rational_json(value);
  Json j;
  j["k"] = st.k;
  j["f"] = st.f;
  j["t"] = st.t;
  j["s"] = st.s;
  j["tau"] = st.tau;
  j["s_t"] = s_t;
  j["theta"] = theta;
  j["regular_g"] = st.regular_g ? Json(*st.regular_g) : Json(nullptr);
  j["storage_load"] = rational_json(st.storage_load);
  j["is_comp"] = st.is_comp;
  return j;
}

inline Json violations_json(const ValidationReport& report) {
  Json list = Json::array();
  for (const auto& v : report.violations) {
    Json rows = Json::array(), cols = Json::array();
    for (auto r : v.rows) rows.push_back(r + 1);
    for (auto c : v.cols) cols.push_back(c + 1);
    list.push_back({{"rule", std::string(rule_name(v.rule))},
                    {"symbol", v.symbol},
                    {"rows", rows},
                    {"cols", cols},
                    {"message", v.describe()}});
  }
  return list;
}

namespace detail {

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RangeError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Sink {
  std::ostream& stdout_stream;
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      stdout_stream << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RangeError("cannot write '" + path + "'");
    out << text;
  }
};

inline Json envelope(const std::string& command, const std::vector<std::string>& argv,
                     Json inputs, Json results) {
  Json j;
  j["tool"] = "compda";
  j["version"] = kVersion;
  j["command"] = command;
  j["argv"] = argv;
  j["inputs"] = std::move(inputs);
  j["results"] = std::move(results);
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string summary_line(const Pda& pda) {
  const auto st = pda_stats(pda);
  std::string s = "(K,F,T,S)=(" + std::to_string(pda.k()) + "," +
                  std::to_string(pda.f()) + "," + std::to_string(pda.t()) + "," +
                  std::to_string(pda.s()) + ")";
  s += st.regular_g ? " " + std::to_string(*st.regular_g) + "-regular" : " irregular";
  if (pda.is_trivial()) s += " trivial";
  s += " tau=" + std::to_string(st.tau) + "\n";
  return s;
}

}  // namespace detail

struct Options {
  std::vector<std::string> argv;
  std::string command;
  std::string out_path;
  std::string format = "csv";
  std::string pda_path;
  // gen
  std::string family;
  std::size_t k = 0, i = 0, q = 0, m = 0, f = 1;
  // subarray
  std::vector<std::size_t> nodes;
  // analyze / tradeoff / simulate / prop1
  std::size_t q_active = 0;
  bool all_q = false;
  std::size_t r = 0;
  JobSpec job;
  std::string mode = "exhaustive";
  std::size_t samples = 16;
  std::size_t threads = 1;
};

inline int cmd_gen(const Options& o, const detail::Sink& sink, std::ostream& err) {
  auto need = [&](std::size_t v, const char* flag) {
    if (v == 0) throw RangeError("gen " + o.family + " needs " + flag);
  };
  const Pda pda = [&] {
    if (o.family == "man") {
      need(o.k, "--k");
      need(o.i, "--i");
      return man_pda(o.k, o.i);
    }
    if (o.family == "p1" || o.family == "p2") {
      need(o.q, "--q");
      need(o.m, "--m");
      return o.family == "p1" ? p1_pda(o.q, o.m) : p2_pda(o.q, o.m);
    }
    need(o.k, "--k");
    return full_star_pda(o.k, o.f);
  }();
  sink.write(render_pda(pda));
  err << detail::summary_line(pda);
  return kOk;
}

inline int cmd_validate(const Options& o, const detail::Sink& sink) {
  const Grid grid = parse_grid(detail::read_file(o.pda_path));
  const auto report = validate_pda(grid, {.require_canonical = false});
  Json results;
  results["ok"] = report.ok();
  results["k"] = report.k;
  results["f"] = report.f;
  results["t"] = report.t;
  results["s"] = report.s;
  results["canonical"] = report.ok() && validate_pda(grid).ok();
  results["violations"] = violations_json(report);
  sink.write(detail::dump(
      detail::envelope(o.command, o.argv, {{"pda", o.pda_path}}, std::move(results))));
  return report.ok() ? kOk : kValidationFailure;
}

inline int cmd_stats(const Options& o, const detail::Sink& sink) {
  const Pda pda = parse_pda(detail::read_file(o.pda_path));
  sink.write(detail::dump(detail::envelope(o.command, o.argv, {{"pda", o.pda_path}},
                                           stats_json(pda_stats(pda)))));
  return kOk;
}

inline int cmd_subarray(const Options& o, const detail::Sink& sink) {
  const Pda pda = parse_pda(detail::read_file(o.pda_path));
  sink.write(render_pda(column_subarray(pda, o.nodes)));
  return kOk;
}

inline int cmd_analyze(const Options& o, const detail::Sink& sink) {
  const Pda pda = parse_pda(detail::read_file(o.pda_path));
  const auto st = pda_stats(pda);
  const LoadPair achieved = achieved_load(pda, o.q_active);
  const Rational optimal = optimal_load(pda.k(), o.q_active, achieved.r);

  Json results;
  results["stats"] = stats_json(st);
  results["r"] = rational_json(achieved.r);
  results["l"] = rational_json(achieved.l);
  results["l_optimal"] = rational_json(optimal);
  if (optimal != 0)
    results["gap"] = rational_json(achieved.l / optimal);
  else
    results["gap"] = achieved.l == 0 ? rational_json(Rational(1)) : Json(nullptr);
  results["f"] = pda.f();
  if (is_integer(achieved.r)) {
    const auto r = boost::multiprecision::numerator(achieved.r).convert_to<std::size_t>();
    const BigInt f_opt = optimal_file_complexity(pda.k(), r);
    results["f_optimal"] = f_opt.str();
    results["f_ratio"] = rational_json(Rational(BigInt(pda.f()), f_opt));
  } else {
    results["f_optimal"] = nullptr;
    results["f_ratio"] = nullptr;
  }
  sink.write(detail::dump(detail::envelope(
      o.command, o.argv, {{"pda", o.pda_path}, {"q", o.q_active}}, std::move(results))));
  return kOk;
}

inline int cmd_tradeoff(const Options& o, const detail::Sink& sink) {
  if (o.k < 1) throw RangeError("tradeoff needs --k >= 1");
  std::vector<std::size_t> qs;
  if (o.all_q) {
    for (std::size_t q = 1; q <= o.k; ++q) qs.push_back(q);
  } else {
    if (o.q_active == 0) throw RangeError("tradeoff needs --q or --all-q");
    qs.push_back(o.q_active);
  }
  // Evaluate first so range errors surface before any output.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> curves;
  for (auto q : qs) {
    auto& curve = curves.emplace_back();
    for (std::size_t r = o.k - std::min(q, o.k) + 1; r <= o.k; ++r)
      curve.emplace_back(r, optimal_load_at(o.k, q, r));
  }

  if (o.format == "csv") {
    std::string csv = "k,q,r,l_star,l_star_decimal\n";
    for (std::size_t c = 0; c < qs.size(); ++c)
      for (const auto& [r, l] : curves[c])
        csv += std::to_string(o.k) + "," + std::to_string(qs[c]) + "," +
               std::to_string(r) + "," + to_string(l) + "," + to_decimal(l) + "\n";
    sink.write(csv);
    return kOk;
  }
  Json list = Json::array();
  for (std::size_t c = 0; c < qs.size(); ++c) {
    Json points = Json::array();
    for (const auto& [r, l] : curves[c]) points.push_back({{"r", r}, {"l_star", rational_json(l)}});
    list.push_back({{"q", qs[c]}, {"points", points}});
  }
  Json inputs{{"k", o.k}};
  inputs["q"] = o.all_q ? Json("all") : Json(o.q_active);
  sink.write(detail::dump(
      detail::envelope(o.command, o.argv, std::move(inputs), {{"curves", list}})));
  return kOk;
}

inline int cmd_simulate(const Options& o, const detail::Sink& sink, std::ostream& err) {
  const Pda pda = parse_pda(detail::read_file(o.pda_path));
  if (o.q_active < 1 || o.q_active > pda.k())
    throw RangeError("--q must lie in 1..K=" + std::to_string(pda.k()));
  JobSpec job = o.job;
  const std::uint64_t d_raw = job.d_functions;
  if (d_raw == 0) throw RangeError("--functions must be >= 1");
  // Pad D to a multiple of Q with extra functions.
  job.d_functions = (d_raw + o.q_active - 1) / o.q_active * o.q_active;
  if (job.d_functions != d_raw)
    err << "note: padding D=" << d_raw << " to " << job.d_functions
        << " so that Q divides it\n";

  MeasureMode mode = Exhaustive{};
  if (o.mode == "sample") mode = Sampled{o.samples, o.job.seed};
  const LoadReport rep = measure_loads(pda, job, o.q_active, mode, o.threads);

  const Rational raw_scale(BigInt(job.d_functions), BigInt(d_raw));
  Json sets = Json::array();
  for (const auto& s : rep.per_active_set)
    sets.push_back({{"active", s.active},
                    {"total_bits", s.total_bits},
                    {"reference_match", s.reference_match}});
  Json results;
  results["mode"] = rep.exhaustive ? "exhaustive" : "sample";
  results["sets"] = rep.per_active_set.size();
  results["functions_raw"] = d_raw;
  results["functions_padded"] = job.d_functions;
  results["r_measured"] = rational_json(rep.r_measured);
  results["l_measured"] = rational_json(rep.l_measured);
  results["l_measured_raw"] = rational_json(rep.l_measured * raw_scale);
  results["closed_form"] = {{"r", rational_json(rep.closed_form.r)},
                            {"l", rational_json(rep.closed_form.l)}};
  results["match"] = rep.match;
  results["all_reference_match"] = rep.all_reference_match;
  results["per_active_set"] = sets;

  Json inputs{{"pda", o.pda_path},       {"q", o.q_active},
              {"files", o.job.n_files},  {"functions", d_raw},
              {"iva_bits", o.job.v_bits}, {"file_bits", o.job.w_bits},
              {"output_bits", o.job.u_bits}, {"seed", o.job.seed},
              {"mode", o.mode}};
  if (o.mode == "sample") inputs["samples"] = o.samples;
  sink.write(detail::dump(
      detail::envelope(o.command, o.argv, std::move(inputs), std::move(results))));

  if (!rep.all_reference_match) {
    err << "defect: some node's reduced outputs differ from the reference\n";
    return kMismatch;
  }
  if (rep.exhaustive && !rep.match) {
    err << "defect: measured load " << to_string(rep.l_measured)
        << " differs from the closed form " << to_string(rep.closed_form.l) << "\n";
    return kMismatch;
  }
  return kOk;
}

inline int cmd_prop1(const Options& o, const detail::Sink& sink) {
  const Prop1Report rep = prop1_check(o.k, o.r, o.q_active);
  Json results;
  results["family"] = rep.family == GridFamily::p1 ? "p1" : "p2";
  results["family_q"] = rep.q;
  results["family_m"] = rep.m;
  results["c"] = rational_json(rep.c);
  results["l_achieved"] = rational_json(rep.l_achieved);
  results["l_optimal"] = rational_json(rep.l_optimal);
  results["l_ratio"] = rational_json(rep.l_ratio);
  results["alpha"] = rational_json(rep.alpha);
  results["f_construction"] = rep.f_construction.str();
  results["f_family"] = rational_json(rep.f_family);
  results["f_optimal"] = rep.f_optimal.str();
  results["f_ratio"] = rational_json(rep.f_ratio);
  results["a_q"] = rep.a_q;
  results["b_q"] = rep.b_q;
  results["beta"] = rep.beta;
  results["alpha_in_range"] = rep.alpha_in_range;
  results["beta_in_range"] = rep.beta_in_range;
  sink.write(detail::dump(detail::envelope(
      o.command, o.argv, {{"k", o.k}, {"r", o.r}, {"q", o.q_active}}, std::move(results))));
  return kOk;
}

// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  Options o;
  o.argv = args;
  CLI::App app{"Coded MapReduce with stragglers from placement delivery arrays", "compda"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Output path (default stdout)");
  };
  auto pda_flag = [&](CLI::App* sub) {
    sub->add_option("--pda", o.pda_path, "PDA file")->required();
  };

  auto* gen = app.add_subcommand("gen", "Construct a PDA and write it in text form");
  gen->add_option("family", o.family, "man | p1 | p2 | fullstar")
      ->required()
      ->check(CLI::IsMember({"man", "p1", "p2", "fullstar"}));
  gen->add_option("--k", o.k, "Nodes (man, fullstar)");
  gen->add_option("--i", o.i, "Subset size (man)");
  gen->add_option("--q", o.q, "Alphabet size (p1, p2)");
  gen->add_option("--m", o.m, "Dimension (p1, p2)");
  gen->add_option("--f", o.f, "Rows (fullstar)")->capture_default_str();
  common(gen);

  auto* validate = app.add_subcommand("validate", "Check a PDA file and list every violation");
  pda_flag(validate);
  common(validate);

  auto* stats = app.add_subcommand("stats", "Minimum storage number, symbol frequencies, regularity");
  pda_flag(stats);
  common(stats);

  auto* subarray = app.add_subcommand("subarray", "Restrict a PDA to some columns, keeping labels");
  pda_flag(subarray);
  subarray->add_option("--nodes", o.nodes, "Ascending 1-based columns, e.g. 1,2,4")
      ->required()
      ->delimiter(',');
  common(subarray);

  auto* analyze = app.add_subcommand("analyze", "Achieved versus optimal load of a PDA");
  pda_flag(analyze);
  analyze->add_option("--q", o.q_active, "Active set size Q")->required();
  common(analyze);

  auto* tradeoff = app.add_subcommand("tradeoff", "Tabulate the fundamental tradeoff");
  tradeoff->add_option("--k", o.k, "Nodes K")->required();
  auto* one_q = tradeoff->add_option("--q", o.q_active, "Active set size Q");
  auto* every_q = tradeoff->add_flag("--all-q", o.all_q, "Every Q in 1..K");
  one_q->excludes(every_q);
  tradeoff->add_option("--format", o.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  common(tradeoff);

  auto* simulate = app.add_subcommand("simulate", "Run the coded scheme and measure loads");
  pda_flag(simulate);
  simulate->add_option("--q", o.q_active, "Active set size Q")->required();
  simulate->add_option("--files", o.job.n_files, "File count N")->required();
  simulate->add_option("--functions", o.job.d_functions, "Function count D")->required();
  simulate->add_option("--iva-bits", o.job.v_bits, "IVA length V")->required();
  simulate->add_option("--file-bits", o.job.w_bits, "File length W")->capture_default_str();
  simulate->add_option("--output-bits", o.job.u_bits, "Output length U")->capture_default_str();
  simulate->add_option("--seed", o.job.seed, "Workload seed")->capture_default_str();
  simulate->add_option("--mode", o.mode, "exhaustive | sample")
      ->check(CLI::IsMember({"exhaustive", "sample"}))
      ->capture_default_str();
  simulate->add_option("--samples", o.samples, "Active sets drawn in sample mode")
      ->capture_default_str();
  simulate->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  common(simulate);

  auto* prop1 = app.add_subcommand("prop1", "Low-complexity family versus the optimum");
  prop1->add_option("--k", o.k, "Nodes K")->required();
  prop1->add_option("--r", o.r, "Storage load r")->required();
  prop1->add_option("--q", o.q_active, "Active set size Q")->required();
  common(prop1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParameterFailure;
  }

  o.command = app.get_subcommands().front()->get_name();
  const detail::Sink sink{out, o.out_path};
  try {
    if (o.command == "gen") return cmd_gen(o, sink, err);
    if (o.command == "validate") return cmd_validate(o, sink);
    if (o.command == "stats") return cmd_stats(o, sink);
    if (o.command == "subarray") return cmd_subarray(o, sink);
    if (o.command == "analyze") return cmd_analyze(o, sink);
    if (o.command == "tradeoff") return cmd_tradeoff(o, sink);
    if (o.command == "simulate") return cmd_simulate(o, sink, err);
    if (o.command == "prop1") return cmd_prop1(o, sink);
    err << "error: unknown command " << o.command << "\n";
    return kParameterFailure;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const DivisibilityError& e) {
    err << "error: " << e.what() << "\n";
    if (e.suggested_v()) err << "hint: try --iva-bits " << *e.suggested_v() << "\n";
    return kParameterFailure;
  } catch (const InsufficientTau& e) {
    err << "error: " << e.what() << "\n"
        << "hint: use an active set size Q >= K - tau + 1\n";
    return kParameterFailure;
  } catch (const InternalError& e) {
    err << "defect: " << e.what() << "\n";
    return kMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kParameterFailure;
  }
}

}  // namespace compda::cli
