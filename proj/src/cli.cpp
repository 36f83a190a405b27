#include "pseudoadder/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pseudoadder/report_io.hpp"
#include "pseudoadder/simulator.hpp"

namespace pseudoadder {

namespace {

using nlohmann::json;

/// Bad input from the command line; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("not a number: \"" + text + "\"");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

// ---------------------------------------------------------------------------
// Netlist sources

struct SourceOptions {
  std::string netlist_path;
  std::string kind;
  int n = 0;
  std::string delay = "uniform:1";
  std::string carry_delays;
  std::string sum_delays;
};

void add_source_options(CLI::App* cmd, SourceOptions& s, bool kind_positional) {
  if (kind_positional) {
    cmd->add_option("kind", s.kind, "rca or ksa")->required()->check(CLI::IsMember({"rca", "ksa"}));
  } else {
    cmd->add_option("--netlist", s.netlist_path, "netlist JSON file");
    cmd->add_option("--kind", s.kind, "built-in generator instead of --netlist")
        ->check(CLI::IsMember({"rca", "ksa"}));
  }
  cmd->add_option("--n", s.n, "operand width");
  cmd->add_option("--delay", s.delay,
                  "uniform:<d>, layers:<pg>,<prefix>,<sum> (ksa), comma list (ksa), or file:<path>");
  cmd->add_option("--carry-delays", s.carry_delays, "rca carry delays, n values");
  cmd->add_option("--sum-delays", s.sum_delays, "rca sum delays, n+1 values");
}

Netlist build_rca(const SourceOptions& s) {
  std::vector<double> carry(static_cast<std::size_t>(s.n), 1.0);
  std::vector<double> sum(static_cast<std::size_t>(s.n) + 1, 1.0);
  if (starts_with(s.delay, "uniform:")) {
    const double d = parse_number(s.delay.substr(8));
    carry.assign(carry.size(), d);
    sum.assign(sum.size(), d);
  } else if (starts_with(s.delay, "file:")) {
    const json j = read_json_file(s.delay.substr(5));
    carry = j.at("carry").get<std::vector<double>>();
    sum = j.at("sum").get<std::vector<double>>();
  } else {
    throw UsageError("rca delays: use uniform:<d>, file:<path>, --carry-delays and --sum-delays");
  }
  if (!s.carry_delays.empty()) carry = parse_list(s.carry_delays);
  if (!s.sum_delays.empty()) sum = parse_list(s.sum_delays);
  return generate_rca(s.n, carry, sum);
}

Netlist build_ksa(const SourceOptions& s) {
  if (!s.carry_delays.empty() || !s.sum_delays.empty()) {
    throw UsageError("--carry-delays/--sum-delays apply to rca only");
  }
  KsaDelays d;
  if (starts_with(s.delay, "uniform:")) {
    d = KsaDelays::uniform(s.n, parse_number(s.delay.substr(8)));
  } else if (starts_with(s.delay, "layers:")) {
    const auto v = parse_list(s.delay.substr(7));
    if (v.size() != 3) throw UsageError("layers:<pg>,<prefix>,<sum> takes three values");
    d = KsaDelays::layered(s.n, v[0], v[1], v[2]);
  } else if (starts_with(s.delay, "file:")) {
    d = ksa_delays_from_json(read_json_file(s.delay.substr(5)), s.n);
  } else {
    const auto v = parse_list(s.delay);
    if (v.size() != KsaDelays::flat_size(s.n)) {
      throw UsageError("ksa delay list for n=" + std::to_string(s.n) + " needs " +
                       std::to_string(KsaDelays::flat_size(s.n)) + " values, got " +
                       std::to_string(v.size()));
    }
    d = KsaDelays::from_flat(s.n, v);
  }
  return generate_ksa(s.n, d);
}

Netlist build_netlist(const SourceOptions& s) {
  if (!s.netlist_path.empty()) {
    if (!s.kind.empty()) throw UsageError("give either --netlist or --kind, not both");
    return netlist_from_json(read_json_file(s.netlist_path));
  }
  if (s.kind.empty()) throw UsageError("no netlist: give --netlist <file> or --kind rca|ksa --n <width>");
  if (s.n < 1) throw UsageError("--n must be at least 1");
  return s.kind == "rca" ? build_rca(s) : build_ksa(s);
}

// ---------------------------------------------------------------------------
// Times

double parse_time(const std::string& text, const Netlist& net) {
  if (text == "quiescence" || text == "q") return net.settle_time();
  const double t = parse_number(text);
  if (!(t >= 0)) throw UsageError("read time must be non-negative");
  return t;
}

/// "a..b" with an optional step, "t0,t1,..." or a single time.
std::vector<double> parse_times(const std::string& text, const Netlist& net, double step) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_time(item, net));
    if (out.empty()) throw UsageError("no read times given");
    return out;
  }
  if (!(step > 0)) throw UsageError("--step must be positive");
  const double from = parse_time(text.substr(0, dots), net);
  const double to = parse_time(text.substr(dots + 2), net);
  if (to < from) throw UsageError("empty time range " + text);
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double t = from + static_cast<double>(k) * step;
    if (t > to + 1e-12) break;
    out.push_back(t);
  }
  if (out.back() < to) out.push_back(to);
  return out;
}

// ---------------------------------------------------------------------------
// Shared run settings

struct RunSettings {
  unsigned jobs = 0;
  bool force = false;
  int oracle_limit = 10;
  std::string format = "json";

  OracleOptions oracle() const { return {oracle_limit, force, jobs}; }
};

CLI::Option* add_format_option(CLI::App* cmd, std::string& format) {
  return cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void add_oracle_options(CLI::App* cmd, RunSettings& rs) {
  cmd->add_option("--jobs", rs.jobs, "worker threads for exhaustive oracles (0 = all cores)");
  cmd->add_flag("--force", rs.force, "run exhaustive oracles above the width limit");
  cmd->add_option("--oracle-limit", rs.oracle_limit,
                  "largest width the oracles accept without --force "
                  "(default from PSEUDOADDER_ORACLE_LIMIT, else 10)");
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string bits_msb_first(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) s.push_back(*it != 0 ? '1' : '0');
  return s;
}

std::string signed_error_string(std::uint64_t s, std::uint64_t s_prime) {
  return std::to_string(static_cast<std::int64_t>(s) - static_cast<std::int64_t>(s_prime));
}

// ---------------------------------------------------------------------------
// Commands

int cmd_gen(const SourceOptions& s, const std::string& out_path, std::ostream& out) {
  if (s.n < 1) throw UsageError("--n must be at least 1");
  const Netlist net = s.kind == "rca" ? build_rca(s) : build_ksa(s);
  const std::string text = netlist_to_json(net).dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write " + out_path);
    f << text;
  }
  return kExitOk;
}

int cmd_ec(const SourceOptions& s, const std::string& t_text, const RunSettings& rs, std::ostream& out) {
  const Netlist net = build_netlist(s);
  const ChainErrorTable ec = extract_ec_table(net, parse_time(t_text, net));
  if (rs.format == "csv") {
    out << "i,j,value\n";
    for (const auto& c : all_chains(ec.width())) out << c.i << ',' << c.j << ',' << ec.at(c) << '\n';
  } else {
    print_json(out, ec_table_to_json(ec));
  }
  return kExitOk;
}

struct SweepRow {
  double T;
  StatsReport report;
};

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& format) {
  if (format == "csv") {
    out << "T,er_avg,er_avg_exact,mse,mse_exact,max_abs\n";
    for (const auto& r : rows) {
      out << format_double(r.T) << ',' << format_double(r.report.er_avg.to_double()) << ','
          << r.report.er_avg.to_string() << ',' << format_double(r.report.mse->to_double()) << ','
          << r.report.mse->to_string() << ',' << r.report.max_abs->max_abs << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"T", r.T},
                   {"er_avg", r.report.er_avg.to_double()},
                   {"er_avg_exact", r.report.er_avg.to_string()},
                   {"mse", r.report.mse->to_double()},
                   {"mse_exact", r.report.mse->to_string()},
                   {"max_abs", r.report.max_abs->max_abs.str()}});
  }
  print_json(out, arr);
}

int run_sweep(const Netlist& net, const std::string& range, double step, const std::string& format,
              std::ostream& out) {
  const auto times = parse_times(range, net, step);
  const auto tables = extract_ec_tables(net, times);
  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < times.size(); ++k) {
    StatsReport r = er_avg_fast(tables[k]);
    r.mse = mse_fast(tables[k]);
    r.max_abs = max_abs_error(tables[k]);
    rows.push_back({times[k], std::move(r)});
  }
  write_sweep(out, rows, format);
  return kExitOk;
}

struct OracleComparison {
  bool sae = true;
  bool mse = true;
  bool max_abs = true;
  bool nu = true;

  bool all() const { return sae && mse && max_abs && nu; }
};

OracleComparison compare_reports(const StatsReport& fast, const StatsReport& oracle, bool with_nu) {
  OracleComparison c;
  c.sae = fast.sae == oracle.sae && fast.er_avg == oracle.er_avg;
  c.mse = fast.mse && oracle.mse && *fast.mse == *oracle.mse;
  c.max_abs = fast.max_abs && oracle.max_abs && fast.max_abs->max_abs == oracle.max_abs->max_abs;
  if (with_nu) c.nu = fast.nu_plus == oracle.nu_plus && fast.nu_minus == oracle.nu_minus;
  return c;
}

json comparison_json(const OracleComparison& c) {
  return {{"sae", c.sae}, {"mse", c.mse}, {"max_abs", c.max_abs}, {"nu_signed", c.nu}, {"pass", c.all()}};
}

int cmd_stats(const SourceOptions& s, const std::string& ec_path, const std::string& t_text,
              const std::string& sweep, double step, bool oracle, const RunSettings& rs,
              std::ostream& out) {
  if (!sweep.empty()) {
    if (!ec_path.empty()) throw UsageError("--sweep-T needs a netlist, not --ec");
    return run_sweep(build_netlist(s), sweep, step, rs.format, out);
  }
  std::optional<Netlist> net;
  std::optional<ChainErrorTable> ec;
  double T = 0;
  if (!ec_path.empty()) {
    ec = ec_table_from_json(read_json_file(ec_path));
  } else {
    net = build_netlist(s);
    T = parse_time(t_text, *net);
    ec = extract_ec_table(*net, T);
  }
  const StatsReport report = analyze(*ec);

  std::optional<StatsReport> truth;
  std::optional<OracleComparison> agreement;
  if (oracle) {
    truth = net ? sae_oracle_simulate(*net, T, rs.oracle()) : sae_oracle_chains(*ec, rs.oracle());
    agreement = compare_reports(report, *truth, !net);
  }

  if (rs.format == "csv") {
    write_stats_csv(out, report, &*ec);
    if (truth) {
      out << "oracle_sae,,," << truth->sae << '\n';
      out << "oracle_mse,,," << truth->mse->to_string() << '\n';
      out << "oracle_max_abs,,," << truth->max_abs->max_abs << '\n';
      out << "oracle_agrees,,," << (agreement->all() ? "true" : "false") << '\n';
    }
  } else {
    json j = stats_report_to_json(report, &*ec);
    if (net) j["T"] = T;
    if (truth) {
      j["oracle"] = {{"sae", truth->sae.str()},
                     {"mse", truth->mse->to_string()},
                     {"max_abs", truth->max_abs->max_abs.str()},
                     {"agreement", comparison_json(*agreement)}};
    }
    print_json(out, j);
  }
  return agreement && !agreement->all() ? kExitCheckFailed : kExitOk;
}

struct VerifyOptions {
  std::string t_text = "quiescence";
  int exhaustive_limit = 6;
  std::uint64_t samples = 20000;
  std::uint64_t seed = 1;
  std::size_t max_counterexamples = 5;
  bool fast_vs_oracle = false;
  int tables = 50;
};

int verify_netlist(const SourceOptions& s, const VerifyOptions& v, const RunSettings& rs,
                   std::ostream& out) {
  const Netlist net = build_netlist(s);
  const int n = net.width();
  const double T = parse_time(v.t_text, net);
  const bool exhaustive = n <= v.exhaustive_limit;
  json checks = json::array();
  bool pass = true;

  const auto cons = check_conservative(
      net, T, exhaustive ? PairSelection::all() : PairSelection::sampled(v.samples, v.seed),
      v.max_counterexamples);
  json cex = json::array();
  for (const auto& c : cons.counterexamples) {
    cex.push_back({{"a", c.pair.a()}, {"b", c.pair.b()}, {"s", c.s}, {"s_prime", c.s_prime},
                   {"position", c.position}});
  }
  checks.push_back({{"name", "conservative"}, {"pass", cons.pass}, {"exhaustive", exhaustive},
                    {"checked", cons.checked}, {"violations", cons.violations},
                    {"counterexamples", cex}});
  pass = pass && cons.pass;

  const std::uint64_t assumption_samples =
      exhaustive ? (std::uint64_t{1} << (2 * n)) : v.samples;
  const auto assumptions = verify_assumptions(net, T, assumption_samples, v.seed, v.max_counterexamples);
  json acex = json::array();
  for (const auto& c : assumptions.counterexamples) {
    json e = {{"kind", c.kind}, {"a", c.pair.a()}, {"b", c.pair.b()}, {"expected", c.expected},
              {"observed", c.observed}};
    if (c.chain) e["chain"] = to_string(*c.chain);
    acex.push_back(std::move(e));
  }
  checks.push_back({{"name", "assumptions"}, {"pass", assumptions.pass()},
                    {"commutative", assumptions.commutative}, {"independent", assumptions.independent},
                    {"pairs_checked", assumptions.pairs_checked},
                    {"chains_checked", assumptions.chains_checked}, {"counterexamples", acex}});
  pass = pass && assumptions.pass();

  if (exhaustive && cons.pass && n <= rs.oracle_limit) {
    const auto ec = extract_ec_table(net, T);
    const auto fast = analyze(ec);
    const auto truth = sae_oracle_simulate(net, T, rs.oracle());
    const auto agreement = compare_reports(fast, truth, false);
    json check = comparison_json(agreement);
    check["name"] = "fast_vs_simulation";
    check["sae_fast"] = fast.sae.str();
    check["sae_oracle"] = truth.sae.str();
    checks.push_back(std::move(check));
    pass = pass && agreement.all();
  }

  print_json(out, {{"n", n}, {"T", T}, {"pass", pass}, {"checks", checks}});
  return pass ? kExitOk : kExitCheckFailed;
}

int verify_fast_vs_oracle(int n, const VerifyOptions& v, const RunSettings& rs, std::ostream& out) {
  if (n < 1) throw UsageError("--fast-vs-oracle needs --n");
  if (v.tables < 1) throw UsageError("--tables must be positive");
  std::mt19937_64 rng(v.seed);
  bool pass = true;
  json failures = json::array();
  for (int t = 0; t < v.tables; ++t) {
    const ChainErrorTable ec = random_realizable_table(n, rng);
    const auto agreement = compare_reports(analyze(ec), sae_oracle_chains(ec, rs.oracle()), true);
    if (!agreement.all()) {
      pass = false;
      json f = comparison_json(agreement);
      f["table"] = ec_table_to_json(ec);
      failures.push_back(std::move(f));
    }
  }
  print_json(out, {{"n", n}, {"tables", v.tables}, {"seed", v.seed}, {"pass", pass}, {"failures", failures}});
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_trace(const SourceOptions& s, std::uint64_t a, std::uint64_t b, const std::string& times_text,
              double step, const RunSettings& rs, std::ostream& out) {
  const Netlist net = build_netlist(s);
  const InputPair p(net.width(), a, b);
  const auto s_true = reference_add(p).sum;
  const SignalTrace trace = simulate(net, p);
  const auto times = parse_times(times_text, net, step);
  if (rs.format == "csv") {
    out << "time,s_prime,error,c_prime\n";
    for (double t : times) {
      const auto r = read_output(trace, net, t);
      out << format_double(t) << ',' << r.s_prime << ',' << signed_error_string(s_true, r.s_prime) << ','
          << bits_msb_first(r.c_prime) << '\n';
    }
  } else {
    json rows = json::array();
    for (double t : times) {
      const auto r = read_output(trace, net, t);
      rows.push_back({{"time", t}, {"s_prime", r.s_prime},
                      {"error", static_cast<std::int64_t>(s_true) - static_cast<std::int64_t>(r.s_prime)},
                      {"c_prime", bits_msb_first(r.c_prime)}});
    }
    print_json(out, {{"n", net.width()}, {"a", a}, {"b", b}, {"s", s_true},
                     {"sign_convention", kSignConvention}, {"rows", rows}});
  }
  return kExitOk;
}

int cmd_chains(int n, std::uint64_t a, std::uint64_t b, const std::string& ec_path, const RunSettings& rs,
               std::ostream& out) {
  const InputPair p(n, a, b);
  const ChainSet set = detect_chains(p);
  std::optional<ChainErrorTable> ec;
  if (!ec_path.empty()) {
    ec = ec_table_from_json(read_json_file(ec_path));
    if (ec->width() != n) throw UsageError("error table width does not match --n");
  }
  if (rs.format == "csv") {
    out << (ec ? "i,j,ec\n" : "i,j\n");
    for (const auto& c : set.chains) {
      out << c.i << ',' << c.j;
      if (ec) out << ',' << ec->at(c);
      out << '\n';
    }
    return kExitOk;
  }
  json chains = json::array();
  for (const auto& c : set.chains) {
    json e = {{"i", c.i}, {"j", c.j}};
    if (ec) e["ec"] = ec->at(c).str();
    chains.push_back(std::move(e));
  }
  json j = {{"n", n}, {"a", a}, {"b", b}, {"chains", chains}};
  if (ec) {
    const auto d = decompose_error(p, *ec);
    j["total_error"] = d.total;
    j["sign_convention"] = kSignConvention;
    const auto dom = dominating_chain(p, *ec);
    j["dominating"] = dom ? json{{"i", dom->i}, {"j", dom->j}} : json(nullptr);
  }
  print_json(out, j);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Error statistics of pseudo-adders read before their outputs settle"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every command");

  RunSettings rs;
  rs.oracle_limit = oracle_limit_from_env(10);

  SourceOptions gen_src;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "emit a generated netlist as JSON");
  add_source_options(gen, gen_src, true);
  gen->add_option("--out", gen_out, "write to a file instead of stdout");

  SourceOptions ec_src;
  std::string ec_T = "0";
  auto* ec_cmd = app.add_subcommand("ec", "extract the chain error table at read time T");
  add_source_options(ec_cmd, ec_src, false);
  ec_cmd->add_option("--T", ec_T, "read time, or 'quiescence'");
  std::string ec_format = "json";
  add_format_option(ec_cmd, ec_format);

  SourceOptions st_src;
  std::string st_T = "0";
  std::string st_ec;
  std::string st_sweep;
  double st_step = 1.0;
  bool st_oracle = false;
  auto* stats = app.add_subcommand("stats", "error statistics at read time T");
  add_source_options(stats, st_src, false);
  stats->add_option("--ec", st_ec, "analyze an error table JSON file instead of a netlist");
  stats->add_option("--T", st_T, "read time, or 'quiescence'");
  stats->add_option("--sweep-T", st_sweep, "time range a..b (b may be 'quiescence'); emits a sweep");
  stats->add_option("--step", st_step, "sweep step");
  stats->add_flag("--oracle", st_oracle, "also run the exhaustive oracle and compare");
  std::string st_format = "json";
  auto* st_format_opt = add_format_option(stats, st_format);
  add_oracle_options(stats, rs);

  SourceOptions sw_src;
  std::string sw_range = "0..quiescence";
  double sw_step = 1.0;
  auto* sweep = app.add_subcommand("sweep", "statistics over a range of read times");
  add_source_options(sweep, sw_src, false);
  sweep->add_option("--T", sw_range, "time range a..b or list t0,t1,...");
  sweep->add_option("--step", sw_step, "step for a..b ranges");
  std::string sw_format = "csv";
  add_format_option(sweep, sw_format);

  SourceOptions vf_src;
  VerifyOptions vf;
  auto* verify = app.add_subcommand("verify", "check the model assumptions and fast-vs-oracle agreement");
  add_source_options(verify, vf_src, false);
  verify->add_option("--T", vf.t_text, "read time, or 'quiescence'");
  verify->add_option("--exhaustive-n-limit", vf.exhaustive_limit, "enumerate all pairs up to this width");
  verify->add_option("--samples", vf.samples, "sampled pairs above the exhaustive limit");
  verify->add_option("--seed", vf.seed, "sampling seed");
  verify->add_option("--max-counterexamples", vf.max_counterexamples, "counterexamples kept per check");
  verify->add_flag("--fast-vs-oracle", vf.fast_vs_oracle,
                   "compare fast statistics with the exhaustive oracle on random error tables");
  verify->add_option("--tables", vf.tables, "random tables for --fast-vs-oracle");
  add_oracle_options(verify, rs);

  SourceOptions tr_src;
  std::uint64_t tr_a = 0;
  std::uint64_t tr_b = 0;
  std::string tr_times = "0..quiescence";
  double tr_step = 1.0;
  auto* trace = app.add_subcommand("trace", "s', s - s' and c' of one pair over time");
  add_source_options(trace, tr_src, false);
  trace->add_option("--a", tr_a)->required();
  trace->add_option("--b", tr_b)->required();
  trace->add_option("--times", tr_times, "t0,t1,... or a..b");
  trace->add_option("--step", tr_step, "step for a..b ranges");

  int ch_n = 0;
  std::uint64_t ch_a = 0;
  std::uint64_t ch_b = 0;
  std::string ch_ec;
  auto* chains = app.add_subcommand("chains", "carry chains of one input pair");
  chains->add_option("--n", ch_n)->required();
  chains->add_option("--a", ch_a)->required();
  chains->add_option("--b", ch_b)->required();
  chains->add_option("--ec", ch_ec, "error table JSON; adds per-chain errors and the dominating chain");

  std::string tr_format = "csv";
  add_format_option(trace, tr_format);
  std::string ch_format = "json";
  add_format_option(chains, ch_format);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_src, gen_out, out);
    if (ec_cmd->parsed()) {
      rs.format = ec_format;
      return cmd_ec(ec_src, ec_T, rs, out);
    }
    if (stats->parsed()) {
      // Sweeps are tables; they default to CSV like the sweep command.
      rs.format = !st_sweep.empty() && st_format_opt->count() == 0 ? "csv" : st_format;
      return cmd_stats(st_src, st_ec, st_T, st_sweep, st_step, st_oracle, rs, out);
    }
    if (sweep->parsed()) return run_sweep(build_netlist(sw_src), sw_range, sw_step, sw_format, out);
    if (verify->parsed()) {
      if (vf.fast_vs_oracle) return verify_fast_vs_oracle(vf_src.n, vf, rs, out);
      return verify_netlist(vf_src, vf, rs, out);
    }
    if (trace->parsed()) {
      rs.format = tr_format;
      return cmd_trace(tr_src, tr_a, tr_b, tr_times, tr_step, rs, out);
    }
    if (chains->parsed()) {
      rs.format = ch_format;
      return cmd_chains(ch_n, ch_a, ch_b, ch_ec, rs, out);
    }
  } catch (const OracleLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConservativenessError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pseudoadder
