#include "pseudoadder/report_io.hpp"

#include <array>
#include <charconv>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

namespace pseudoadder {

namespace {

nlohmann::json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

BigInt big_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? BigInt(v.get<std::uint64_t>()) : BigInt(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    const std::size_t digits = !text.empty() && (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (text.size() == digits || text.find_first_not_of("0123456789", digits) != std::string::npos) {
      throw std::invalid_argument("not a decimal integer: \"" + text + "\"");
    }
    return BigInt(text);
  }
  throw std::invalid_argument("error table value must be an integer or decimal string");
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

nlohmann::json ec_table_to_json(const ChainErrorTable& ec) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& c : all_chains(ec.width())) {
    const BigInt& v = ec.at(c);
    if (v == 0) continue;
    entries.push_back({{"i", c.i}, {"j", c.j}, {"value", big_to_json(v)}});
  }
  return {{"n", ec.width()}, {"ec", entries}};
}

ChainErrorTable ec_table_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kMaxTableWidth) {
      throw std::invalid_argument("table width out of range: " + std::to_string(n));
    }
    ChainErrorTable ec(n);
    for (const auto& e : j.at("ec")) {
      const CarryChain c{e.at("i").get<int>(), e.at("j").get<int>()};
      ec.set(c, big_from_json(e.at("value")));
    }
    return ec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed error table JSON: ") + e.what());
  }
}

std::vector<ReportField> report_fields(const StatsReport& r, const ChainErrorTable* ec) {
  std::vector<ReportField> f;
  auto add = [&](std::string name, std::string value, std::optional<CarryChain> c = std::nullopt) {
    f.push_back({std::move(name), c, std::move(value)});
  };
  add("n", std::to_string(r.n));
  add("sign_convention", kSignConvention);
  add("sae", r.sae.str());
  add("er_avg", r.er_avg.to_string());
  add("er_avg_float", format_double(r.er_avg.to_double()));
  if (r.mse) {
    add("mse", r.mse->to_string());
    add("mse_float", format_double(r.mse->to_double()));
  }
  if (r.max_abs) {
    add("max_abs", r.max_abs->max_abs.str());
    add("max_abs_witness_weight", r.max_abs->witness_weight.str());
    for (std::size_t k = 0; k < r.max_abs->witness.chains.size(); ++k) {
      add("max_abs_witness", std::to_string(k), r.max_abs->witness.chains[k]);
    }
  }
  if (ec != nullptr) {
    for (const auto& c : all_chains(ec->width())) add("ec", ec->at(c).str(), c);
  }
  for (const auto& [c, v] : r.nu_plus) add("nu_plus", v.str(), c);
  for (const auto& [c, v] : r.nu_minus) add("nu_minus", v.str(), c);
  for (const auto& [c, v] : r.p_plus) add("p_plus", format_double(v), c);
  for (const auto& [c, v] : r.p_minus) add("p_minus", format_double(v), c);
  return f;
}

nlohmann::json stats_report_to_json(const StatsReport& r, const ChainErrorTable* ec) {
  nlohmann::json j;
  j["n"] = r.n;
  j["sign_convention"] = kSignConvention;
  j["sae"] = r.sae.str();
  j["er_avg"] = {{"exact", r.er_avg.to_string()}, {"value", r.er_avg.to_double()}};
  if (r.mse) j["mse"] = {{"exact", r.mse->to_string()}, {"value", r.mse->to_double()}};
  if (r.max_abs) {
    nlohmann::json witness = nlohmann::json::array();
    for (const auto& c : r.max_abs->witness.chains) witness.push_back({{"i", c.i}, {"j", c.j}});
    j["max_abs"] = {{"value", r.max_abs->max_abs.str()},
                    {"witness", witness},
                    {"witness_weight", r.max_abs->witness_weight.str()}};
  }

  // Per-chain rows, keyed by chain so that partial maps still line up.
  std::map<CarryChain, nlohmann::json> rows;
  auto row = [&](const CarryChain& c) -> nlohmann::json& {
    auto& entry = rows[c];
    if (entry.is_null()) entry = {{"i", c.i}, {"j", c.j}};
    return entry;
  };
  if (ec != nullptr) {
    for (const auto& c : all_chains(ec->width())) row(c)["ec"] = ec->at(c).str();
  }
  for (const auto& [c, v] : r.nu_plus) row(c)["nu_plus"] = v.str();
  for (const auto& [c, v] : r.nu_minus) row(c)["nu_minus"] = v.str();
  for (const auto& [c, v] : r.p_plus) row(c)["p_plus"] = v;
  for (const auto& [c, v] : r.p_minus) row(c)["p_minus"] = v;
  nlohmann::json chains = nlohmann::json::array();
  for (auto& [c, entry] : rows) chains.push_back(std::move(entry));
  j["chains"] = std::move(chains);
  return j;
}

void write_stats_csv(std::ostream& out, const StatsReport& r, const ChainErrorTable* ec) {
  out << "field,i,j,value\n";
  for (const auto& f : report_fields(r, ec)) {
    out << f.name << ',';
    if (f.chain) out << f.chain->i << ',' << f.chain->j;
    else out << ',';
    out << ',' << f.value << '\n';
  }
}

}  // namespace pseudoadder
