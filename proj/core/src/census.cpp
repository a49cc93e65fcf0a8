#include "etale/census.hpp"

#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "etale/errors.hpp"

namespace etale {
namespace {

using nlohmann::ordered_json;

BigInt parse_big(const std::string& text) {
  if (text.empty() || text.find_first_not_of("-0123456789") != std::string::npos) {
    throw DomainError("not a decimal integer: '" + text + "'");
  }
  return BigInt(text);
}

std::uint64_t parse_u64(const std::string& text) {
  const BigInt v = parse_big(text);
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
    throw DomainError("out of range: '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

Verified parse_verified(const std::string& text) {
  if (text == "true") return Verified::True;
  if (text == "false") return Verified::False;
  if (text == "skipped") return Verified::Skipped;
  throw DomainError("verified must be true, false or skipped, got '" + text + "'");
}

ordered_json to_json(const CensusRow& row) {
  ordered_json j;
  j["params"] = {{"g", std::to_string(row.g)},
                 {"m", std::to_string(row.m)},
                 {"n", std::to_string(row.n)}};
  j["counts"] = {{"T", to_decimal(row.T)},
                 {"N_cyclic", to_decimal(row.N_cyclic)},
                 {"C_total", to_decimal(row.C_total)}};
  j["per_prime"] = ordered_json::array();
  for (const auto& pp : row.per_prime) {
    j["per_prime"].push_back({{"p", std::to_string(pp.p)},
                              {"e", std::to_string(pp.e)},
                              {"lf_count", std::to_string(pp.lf_count)},
                              {"pev_count", to_decimal(pp.pev_count)}});
  }
  ordered_json match;
  if (row.verified == Verified::Skipped) {
    match = "skipped";
  } else {
    match = row.verified == Verified::True;
  }
  j["verification"] = {{"method", row.method},
                       {"match", match},
                       {"oracle_value", row.oracle_value ? ordered_json(to_decimal(*row.oracle_value))
                                                         : ordered_json(nullptr)}};
  return j;
}

CensusRow from_json(const ordered_json& j) {
  try {
    CensusRow row;
    row.g = static_cast<int>(parse_u64(j.at("params").at("g").get<std::string>()));
    row.m = parse_u64(j.at("params").at("m").get<std::string>());
    row.n = parse_u64(j.at("params").at("n").get<std::string>());
    row.T = parse_big(j.at("counts").at("T").get<std::string>());
    row.N_cyclic = parse_big(j.at("counts").at("N_cyclic").get<std::string>());
    row.C_total = parse_big(j.at("counts").at("C_total").get<std::string>());
    for (const auto& pp : j.at("per_prime")) {
      row.per_prime.push_back({parse_u64(pp.at("p").get<std::string>()),
                               static_cast<unsigned>(parse_u64(pp.at("e").get<std::string>())),
                               static_cast<int>(parse_big(pp.at("lf_count").get<std::string>())),
                               parse_big(pp.at("pev_count").get<std::string>())});
    }
    const auto& v = j.at("verification");
    row.method = v.at("method").get<std::string>();
    const auto& match = v.at("match");
    row.verified = match.is_boolean() ? (match.get<bool>() ? Verified::True : Verified::False)
                                      : parse_verified(match.get<std::string>());
    if (!v.at("oracle_value").is_null()) {
      row.oracle_value = parse_big(v.at("oracle_value").get<std::string>());
    }
    return row;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed census JSON: ") + e.what());
  }
}

ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("malformed census JSON: ") + e.what());
  }
}

}  // namespace

std::string to_string(Verified v) {
  switch (v) {
    case Verified::True: return "true";
    case Verified::False: return "false";
    case Verified::Skipped: return "skipped";
  }
  return "skipped";
}

bool same_columns(const CensusRow& a, const CensusRow& b) {
  return a.g == b.g && a.m == b.m && a.n == b.n && a.T == b.T && a.N_cyclic == b.N_cyclic &&
         a.C_total == b.C_total && a.verified == b.verified;
}

CensusRow make_row(const CoverCountReport& report) {
  CensusRow row;
  row.g = report.g;
  row.m = report.m;
  row.n = report.n;
  row.T = report.T;
  row.N_cyclic = report.N_cyclic;
  row.C_total = report.C_total;
  row.per_prime = report.per_prime;
  return row;
}

CensusRow make_row(const CoverCountReport& report, const VerifyVerdict& verdict) {
  CensusRow row = make_row(report);
  row.verified = verdict.match ? Verified::True : Verified::False;
  row.method = verdict.method();
  row.oracle_value = verdict.enumeration ? *verdict.enumeration : verdict.kernel;
  return row;
}

std::vector<CensusRow> build_census(int g, std::int64_t m_max, std::int64_t n_max,
                                    bool run_verification, const VerifyOptions& options) {
  if (g < 2) throw DomainError("genus g must be >= 2");
  if (m_max < 2) throw DomainError("m_max must be >= 2");
  if (n_max < 2) throw DomainError("n_max must be >= 2");
  std::vector<CensusRow> rows;
  for (std::int64_t m = 2; m <= m_max; ++m) {
    for (std::int64_t n = 2; n <= n_max; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const CoverCountReport report = count_total(g, m, n);
      rows.push_back(run_verification ? make_row(report, verify(g, m, n, options)) : make_row(report));
    }
  }
  return rows;
}

std::string census_to_csv(const std::vector<CensusRow>& rows) {
  std::string out = std::string(kCensusCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.g) + "," + std::to_string(r.m) + "," + std::to_string(r.n) + "," +
           to_decimal(r.T) + "," + to_decimal(r.N_cyclic) + "," + to_decimal(r.C_total) + "," +
           to_string(r.verified) + "\n";
  }
  return out;
}

std::vector<CensusRow> census_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCensusCsvHeader) {
    throw DomainError("census CSV header must be '" + std::string(kCensusCsvHeader) + "'");
  }
  std::vector<CensusRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    if (fields.size() != 7) throw DomainError("census CSV row needs 7 fields: '" + line + "'");
    CensusRow row;
    row.g = static_cast<int>(parse_u64(fields[0]));
    row.m = parse_u64(fields[1]);
    row.n = parse_u64(fields[2]);
    row.T = parse_big(fields[3]);
    row.N_cyclic = parse_big(fields[4]);
    row.C_total = parse_big(fields[5]);
    row.verified = parse_verified(fields[6]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string row_to_json(const CensusRow& row, int indent) { return to_json(row).dump(indent); }

std::string census_to_json(const std::vector<CensusRow>& rows, int indent) {
  ordered_json array = ordered_json::array();
  for (const auto& r : rows) array.push_back(to_json(r));
  return array.dump(indent) + "\n";
}

std::vector<CensusRow> census_from_json(const std::string& text) {
  const ordered_json doc = parse_document(text);
  if (!doc.is_array()) throw DomainError("census JSON must be an array of rows");
  std::vector<CensusRow> rows;
  for (const auto& item : doc) rows.push_back(from_json(item));
  return rows;
}

CensusRow row_from_json(const std::string& text) { return from_json(parse_document(text)); }

}  // namespace etale
