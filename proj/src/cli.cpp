#include "invlim/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "invlim/axioms.hpp"
#include "invlim/example2.hpp"
#include "invlim/gasket.hpp"
#include "invlim/quotient.hpp"
#include "invlim/smale.hpp"
#include "invlim/solenoid.hpp"
#include "invlim/thread.hpp"

namespace invlim::cli {

namespace {

using Json = nlohmann::ordered_json;

void emit(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

Json to_json(const RationalInterval& v) { return Json{{"lo", v.lo.str()}, {"hi", v.hi.str()}}; }
Json to_json(const std::optional<Rational>& v) { return v ? Json(v->str()) : Json(nullptr); }
Json to_json(const AxiomConstants& c) { return Json{{"beta", c.beta.str()}, {"K", c.K}, {"gamma", c.gamma.str()}}; }

const char* tri_name(Tri t) { return t == Tri::kTrue ? "true" : t == Tri::kFalse ? "false" : "indeterminate"; }

Json system_json(const SystemConfig& s) {
  Json j{{"name", s.name}};
  if (!s.alphabet.empty()) j["alphabet"] = s.alphabet;
  if (!s.adjacency.empty()) j["adjacency"] = s.adjacency;
  if (!s.gasket_labels.empty()) j["gasket_labels"] = s.gasket_labels;
  return j;
}

SystemConfig system_from_json(const Json& j) {
  SystemConfig s;
  s.name = j.at("name").get<std::string>();
  if (j.contains("alphabet")) s.alphabet = j["alphabet"].get<std::string>();
  if (j.contains("adjacency")) s.adjacency = j["adjacency"].get<std::vector<std::string>>();
  if (j.contains("gasket_labels")) s.gasket_labels = j["gasket_labels"].get<std::vector<std::string>>();
  return s;
}

Json witness_json(const SystemConfig& s, const AxiomConstants& c, const Witness& w) {
  Json values = Json::object();
  for (const auto& [k, v] : w.values) values[k] = v.str();
  return Json{{"record", "witness"}, {"system", system_json(s)}, {"constants", to_json(c)}, {"kind", w.kind},
              {"points", w.points},  {"values", values},          {"certificate", w.certificate}};
}

template <class F>
int with_system(const SystemConfig& sc, F&& f) {
  if (sc.name == "solenoid") {
    SolenoidSystem s;
    return f(s);
  }
  if (sc.name == "example2") {
    Example2System s;
    return f(s);
  }
  if (sc.name == "gasket") {
    GasketSystem s(sc.gasket_table());
    return f(s);
  }
  ShiftSystem s(sc.shift_spec(), sc.name);
  return f(s);
}

Json report_json(const RunConfig& rc, const AxiomReport& r) {
  return Json{{"record", "axiom"},
              {"system", rc.system.name},
              {"axiom", r.axiom},
              {"constants", to_json(r.constants)},
              {"resolution", r.resolution.str()},
              {"net_size", r.net_size},
              {"pairs_checked", r.pairs_checked},
              {"violations", r.violations},
              {"zero_denominator", r.zero_denominator},
              {"worst", to_json(r.worst)},
              {"pass", r.pass}};
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
  return with_system(rc.system, [&](const auto& sys) {
    auto net = make_net(sys, rc.resolution);
    CheckOptions opt{rc.jobs, rc.format == "csv"};
    std::vector<AxiomReport> reports;
    if (rc.axiom != "2") reports.push_back(check_axiom1(sys, rc.constants, net, opt));
    if (rc.axiom != "1") reports.push_back(check_axiom2(sys, rc.constants, net, EpsilonSpec::all(), opt));
    bool pass = true;
    if (rc.format == "csv") out << "axiom,ratio,count\n";
    for (const auto& r : reports) {
      pass = pass && r.pass;
      if (rc.format == "csv") {
        for (const auto& [ratio, n] : r.ratio_histogram) out << r.axiom << "," << ratio.str() << "," << n << "\n";
        continue;
      }
      emit(out, report_json(rc, r));
      for (const auto& w : r.witnesses) emit(out, witness_json(rc.system, rc.constants, w));
    }
    return pass ? kPass : kFalsified;
  });
}

int cmd_search(const RunConfig& rc, std::ostream& out) {
  return with_system(rc.system, [&](const auto& sys) {
    SearchGrid grid{rc.K_min, rc.K_max, rc.gammas, rc.betas};
    auto res = search_axiom_constants(sys, grid, rc.resolution, CheckOptions{rc.jobs, false});
    if (rc.format == "csv") out << "K,beta,gamma,axiom1_worst,axiom2_worst,pass\n";
    for (const auto& c : res.candidates) {
      const bool pass = c.axiom1_pass && c.axiom2_pass.value_or(false);
      if (rc.format == "csv") {
        out << c.constants.K << "," << c.constants.beta.str() << "," << c.constants.gamma.str() << ","
            << (c.axiom1_worst ? c.axiom1_worst->str() : "") << "," << (c.axiom2_worst ? c.axiom2_worst->str() : "")
            << "," << (pass ? 1 : 0) << "\n";
        continue;
      }
      Json j{{"record", "candidate"},
             {"constants", to_json(c.constants)},
             {"axiom1_pass", c.axiom1_pass},
             {"axiom1_worst", to_json(c.axiom1_worst)},
             {"axiom1_zero_denominator", c.axiom1_zero_denominator},
             {"axiom2_pass", c.axiom2_pass ? Json(*c.axiom2_pass) : Json(nullptr)},
             {"axiom2_worst", to_json(c.axiom2_worst)}};
      emit(out, j);
    }
    if (rc.format != "csv") {
      Json j{{"record", "search"}, {"system", rc.system.name}, {"resolution", rc.resolution.str()},
             {"candidates", res.candidates.size()}, {"found", res.best.has_value()}};
      j["best"] = res.best ? to_json(*res.best) : Json(nullptr);
      emit(out, j);
      if (res.axiom1) emit(out, report_json(rc, *res.axiom1));
      if (res.axiom2) emit(out, report_json(rc, *res.axiom2));
    }
    return res.best ? kPass : kFalsified;
  });
}

template <class S>
Thread<S> thread_field(const S& sys, const std::string& field, const std::string& text) {
  try {
    return parse_thread(sys, text);
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
}

int cmd_bracket(const RunConfig& rc, std::ostream& out) {
  return with_system(rc.system, [&](const auto& sys) {
    using S = std::decay_t<decltype(sys)>;
    const auto& c = rc.constants;
    const int need = rc.depth + 3 * c.K + 16;
    auto x = extend_thread(thread_field(sys, "x", rc.x), need);
    auto y = extend_thread(thread_field(sys, "y", rc.y), need);
    auto hc = derive_hat_constants(sys, c);
    auto d = metric_dhat(x, y, c);
    Json j{{"record", "bracket"}, {"system", rc.system.name}, {"constants", to_json(c)},
           {"eps_hat", hc.eps_hat.str()}, {"dhat_xy", to_json(d.value)}, {"depth", rc.depth}};
    if (d.value.hi > hc.eps_hat) throw ConfigError("y", "d^(x, y) is not certified <= eps_hat = " + hc.eps_hat.str());
    try {
      auto z = bracket_construct(x, y, c, hc, rc.depth);
      auto alt = bracket_construct(x, y, c, hc, rc.depth, PreimageChoice::kGreatest);
      auto trunc = [&](const Thread<S>& t) {
        return Thread<S>(sys, {t.entries().begin(), t.entries().begin() + rc.depth + 1});
      };
      auto st = stable_membership(z, trunc(x), hc.eps_prime, c);
      auto un = unstable_membership(z, trunc(y), hc.eps_prime, c);
      j["z"] = format_thread(z);
      j["unique"] = alt == z;
      j["in_stable_set_of_x"] = tri_name(st.verdict);
      j["in_unstable_set_of_y"] = tri_name(un.verdict);
      emit(out, j);
      if (st.verdict == Tri::kFalse || un.verdict == Tri::kFalse || alt != z) return kFalsified;
      if (st.verdict != Tri::kTrue || un.verdict != Tri::kTrue) return kIndeterminate;
      return kPass;
    } catch (const NoAdmissiblePreimage& e) {
      j["error"] = "no-admissible-preimage";
      j["stage"] = e.stage();
      j["message"] = e.what();
      emit(out, j);
      return kFalsified;
    }
  });
}

int cmd_smale_verify(const RunConfig& rc, std::ostream& out) {
  return with_system(rc.system, [&](const auto& sys) -> int {
    using S = std::decay_t<decltype(sys)>;
    if constexpr (!requires(const S& s, const PointOf<S>& p, const Rational& r) { s.neighbours(p, r); }) {
      throw ConfigError("system", "no unstable-pair sampler for " + rc.system.name);
    } else {
      const auto& c = rc.constants;
      auto hc = derive_hat_constants(sys, c);
      const Rational start_res = rc.system.name == "solenoid" ? Rational(1, 12)
                                 : rc.system.name == "gasket" ? Rational(1, 4)
                                                              : Rational(1, 16);
      auto starts = sys.net(start_res);
      emit(out, Json{{"record", "hat_constants"},
                     {"system", rc.system.name},
                     {"constants", to_json(c)},
                     {"eps_prime", hc.eps_prime.str()},
                     {"eps_double_prime", hc.eps_double_prime.str()},
                     {"eps_hat", hc.eps_hat.str()}});
      int status = kPass;
      auto note = [&](int s) {
        if (s == kFalsified || status == kFalsified) status = kFalsified;
        else if (s == kIndeterminate) status = kIndeterminate;
      };
      for (auto kind : {ContractionKind::kStable, ContractionKind::kUnstable}) {
        const bool stable = kind == ContractionKind::kStable;
        auto pairs = stable ? sample_stable_pairs(sys, starts, c, hc.eps_prime, rc.samples, rc.depth, rc.seed)
                            : sample_unstable_pairs(sys, starts, c, hc.eps_prime, rc.samples, rc.depth, rc.seed + 1);
        auto rep = verify_contraction(pairs, kind, c, rc.depth_cap);
        emit(out, Json{{"record", "contraction"},
                       {"kind", stable ? "stable" : "unstable"},
                       {"samples", pairs.size()},
                       {"passed", rep.passed},
                       {"failed", rep.failed},
                       {"indeterminate", rep.indeterminate},
                       {"exact_scaling", rep.exact_scaling},
                       {"depth_cap", rep.depth_cap},
                       {"max_depth_used", rep.max_depth_used}});
        std::size_t shown = 0;
        for (std::size_t i = 0; i < pairs.size() && shown < kMaxWitnesses; ++i) {
          const auto& o = rep.outcomes[i];
          if (o.verdict == Tri::kTrue) continue;
          ++shown;
          emit(out, Json{{"record", "contraction_outcome"},
                         {"kind", stable ? "stable" : "unstable"},
                         {"y", format_thread(pairs[i].first)},
                         {"z", format_thread(pairs[i].second)},
                         {"verdict", tri_name(o.verdict)},
                         {"left", to_json(o.left)},
                         {"right", to_json(o.right)},
                         {"depth", o.depth}});
        }
        if (pairs.size() < rc.samples) note(kIndeterminate);
        note(rep.failed ? kFalsified : rep.indeterminate ? kIndeterminate : kPass);
      }
      auto fin = finite_to_one_check(sys, rc.resolution);
      Json counts = Json::object();
      for (const auto& [k, n] : fin.counts) counts[std::to_string(k)] = n;
      std::vector<std::string> wit;
      for (const auto& p : fin.witnesses) wit.push_back(sys.format(p));
      emit(out, Json{{"record", "finite_to_one"}, {"resolution", rc.resolution.str()}, {"max_count", fin.max_count},
                     {"witnesses", wit}, {"counts", counts}});
      return status;
    }
  });
}

int cmd_conjugacy(const RunConfig& rc, std::ostream& out) {
  auto spec = rc.system.shift_spec();
  auto samples = random_two_sided(spec, rc.samples, 3, rc.seed);
  auto rep = verify_conjugacy(spec, samples, rc.depth);
  emit(out, Json{{"record", "conjugacy"},
                 {"system", rc.system.name},
                 {"depth", rep.depth},
                 {"samples", rep.samples},
                 {"commutation_failures", rep.commutation_failures},
                 {"injectivity_failures", rep.injectivity_failures},
                 {"required_depth", rep.required_depth},
                 {"surjectivity_threads", rep.surjectivity_threads},
                 {"surjectivity_failures", rep.surjectivity_failures},
                 {"failures", rep.failures},
                 {"pass", rep.pass()}});
  auto qc = quotient_axiom_constants(spec, rc.jobs);
  Json j{{"record", "quotient_constants"}, {"found", qc.constants.has_value()}};
  j["constants"] = qc.constants ? to_json(*qc.constants) : Json(nullptr);
  emit(out, j);
  return rep.pass() && qc.constants ? kPass : kFalsified;
}

int cmd_falsify_example2(const RunConfig& rc, std::ostream& out) {
  Example2System sys;
  const int K = rc.constants.K;
  const Rational& gamma = rc.constants.gamma;
  bool falsified = false;
  for (const char* which : {"stated", "corrected"}) {
    const bool stated = std::string(which) == "stated";
    auto pair = stated ? example2_stated_pair(K, rc.N) : example2_corrected_pair(K, rc.N);
    auto cert = certify_example2(sys, K, gamma, pair);
    Json pre = Json::array();
    for (std::size_t i = 0; i < cert.preimages.size(); ++i)
      pre.push_back(Json{{"point", sys.format(cert.preimages[i])}, {"distance", cert.preimage_distances[i].str()}});
    std::vector<std::string> ball;
    for (const auto& b : cert.ball_members) ball.push_back(sys.format(b));
    emit(out, Json{{"record", "example2_certificate"},
                   {"pair", which},
                   {"K", K},
                   {"N", rc.N},
                   {"gamma", gamma.str()},
                   {"x", sys.format(cert.x)},
                   {"y", sys.format(cert.y)},
                   {"d_gKx_y", cert.distance_gKx_y.str()},
                   {"radius", cert.radius.str()},
                   {"target", sys.format(cert.target)},
                   {"preimages", pre},
                   {"falsified", cert.falsified},
                   {"ball_members", ball}});
    if (!cert.falsified) continue;
    falsified = true;
    // The same certificate as an Axiom-2 witness with beta = epsilon.
    AxiomConstants c{cert.distance_gKx_y, K, gamma};
    Rational m = min_distance_to(sys, cert.preimages, cert.x);
    Witness w{"axiom2",
              {sys.format(cert.x), sys.format(cert.y)},
              {{"epsilon", cert.distance_gKx_y},
               {"d_w_gKx", cert.distance_gKx_y},
               {"min_distance", m},
               {"radius", cert.radius}},
              detail::format_all(sys, cert.preimages)};
    emit(out, witness_json(SystemConfig{"example2", {}, {}, {}}, c, w));
  }
  return falsified ? kFalsified : kPass;
}

int cmd_replay(const RunConfig& rc, std::ostream& out) {
  std::ifstream in(rc.witness_file);
  if (!in) throw ConfigError("witness-file", "cannot read '" + rc.witness_file + "'");
  std::string line;
  std::size_t index = 0, witnesses = 0, failed = 0;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] != '{') continue;  // CSV or blank lines
    Json j;
    try {
      j = Json::parse(line);
    } catch (const std::exception& e) {
      throw ConfigError("witness-file", "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (j.value("record", "") != "witness") continue;
    ++witnesses;
    std::string reason;
    Witness w;
    try {
      auto sc = system_from_json(j.at("system"));
      const auto& cj = j.at("constants");
      AxiomConstants c{Rational::parse(cj.at("beta").get<std::string>()), cj.at("K").get<int>(),
                       Rational::parse(cj.at("gamma").get<std::string>())};
      w.kind = j.at("kind").get<std::string>();
      w.points = j.at("points").get<std::vector<std::string>>();
      for (const auto& [k, v] : j.at("values").items()) w.values.emplace_back(k, Rational::parse(v.get<std::string>()));
      w.certificate = j.at("certificate").get<std::vector<std::string>>();
      with_system(sc, [&](const auto& sys) {
        reason = replay_witness(sys, c, w);
        return 0;
      });
    } catch (const std::exception& e) {
      reason = e.what();
    }
    if (!reason.empty()) ++failed;
    Json r{{"record", "replay"}, {"index", index++}, {"kind", w.kind}, {"ok", reason.empty()}};
    if (!reason.empty()) r["reason"] = reason;
    emit(out, r);
  }
  emit(out, Json{{"record", "replay_summary"}, {"witnesses", witnesses}, {"failed", failed}});
  return failed ? kFalsified : kPass;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buf;  // nothing reaches `out` from a run that ends in a config error
  int status = kConfigError;
  try {
    if (config.format == "csv" && config.command != "verify" && config.command != "search")
      throw ConfigError("format", "csv output exists for verify and search only");
    if (config.format != "csv") emit(buf, Json{{"record", "run"}, {"config", config.serialize()}});
    if (config.command == "verify") status = cmd_verify(config, buf);
    else if (config.command == "search") status = cmd_search(config, buf);
    else if (config.command == "bracket") status = cmd_bracket(config, buf);
    else if (config.command == "smale-verify") status = cmd_smale_verify(config, buf);
    else if (config.command == "conjugacy") status = cmd_conjugacy(config, buf);
    else if (config.command == "falsify-example2") status = cmd_falsify_example2(config, buf);
    else if (config.command == "replay") status = cmd_replay(config, buf);
    else throw ConfigError("command", "unknown command '" + config.command + "'");
  } catch (const ConfigError& e) {
    err << "invlim: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "invlim: " << e.what() << "\n";
    return kConfigError;
  }
  out << buf.str();
  return status;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse limits of expanding systems: axiom checks, brackets and conjugacies", "invlim"};
  app.require_subcommand(0, 1);
  std::string config_path, sft_path;
  bool csv = false;
  std::vector<std::pair<std::string, std::string>> overrides;
  app.add_option("--config", config_path, "run config file (key = value lines)");
  app.add_option("--sft", sft_path, "file with alphabet and adjacency keys; selects system sft");
  app.add_flag("--csv", csv, "CSV output for verify and search");
  const std::vector<std::pair<std::string, std::string>> keys{
      {"system", "fullshift2, golden, sft, solenoid, example2 or gasket"},
      {"axiom", "1, 2 or both"},
      {"beta", "p/q"},
      {"K", "iterate count"},
      {"gamma", "p/q in (0,1)"},
      {"resolution", "net resolution p/q"},
      {"depth", "thread depth"},
      {"depth-cap", "deepening cap"},
      {"samples", "sample count"},
      {"seed", "sampling seed"},
      {"jobs", "worker threads"},
      {"K-min", "search: smallest K"},
      {"K-max", "search: largest K"},
      {"gammas", "search: comma separated"},
      {"betas", "search: comma separated"},
      {"x", "bracket: thread"},
      {"y", "bracket: thread"},
      {"N", "falsify-example2: position of the 2"},
      {"witness-file", "replay: report with witness records"}};
  for (const auto& [key, help] : keys)
    app.add_option_function<std::string>(
        "--" + key, [&overrides, k = key](const std::string& v) { overrides.emplace_back(k, v); }, help);
  for (const char* cmd : {"verify", "search", "bracket", "smale-verify", "conjugacy", "falsify-example2", "replay"})
    app.add_subcommand(cmd)->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "invlim: " << e.what() << "\n";
    return kConfigError;
  }
  try {
    ConfigFile file = config_path.empty() ? ConfigFile{} : ConfigFile::load(config_path);
    if (!config_path.empty() && file.empty()) throw ConfigError("config", "'" + config_path + "' is empty");
    if (!sft_path.empty()) {
      auto sft = ConfigFile::load(sft_path);
      for (const auto& e : sft.entries()) {
        if (e.key != "alphabet" && e.key != "adjacency")
          throw ConfigError(e.key, "unexpected in matrix file '" + sft_path + "'", e.line);
        file.set(e.key, e.value);
      }
      file.set("system", "sft");
    }
    for (auto* sub : app.get_subcommands()) file.set("command", sub->get_name());
    for (const auto& [k, v] : overrides) file.set(k, v);
    if (csv) file.set("format", "csv");
    return run(RunConfig::from(file), out, err);
  } catch (const ConfigError& e) {
    err << "invlim: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace invlim::cli
