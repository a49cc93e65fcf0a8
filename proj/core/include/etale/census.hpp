#pragma once

// Census rows over (m, n) grids and their CSV / JSON encodings.
//
// JSON object per report:
//   {"params":{"g","m","n"},
//    "counts":{"T","N_cyclic","C_total"},
//    "per_prime":[{"p","e","lf_count","pev_count"}],
//    "verification":{"method","match","oracle_value"}}
// Every number is a decimal string. match is true, false or "skipped";
// oracle_value is null when no oracle ran.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etale/bigint.hpp"
#include "etale/covering_count.hpp"
#include "etale/eigen_oracle.hpp"

namespace etale {

enum class Verified { True, False, Skipped };
std::string to_string(Verified v);

struct CensusRow {
  int g = 0;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  BigInt T;
  BigInt N_cyclic;
  BigInt C_total;
  Verified verified = Verified::Skipped;
  std::string method = "none";
  std::optional<BigInt> oracle_value;
  std::vector<PrimeBreakdown> per_prime;  // empty when read back from CSV
};

/// Equality over the CSV columns.
bool same_columns(const CensusRow& a, const CensusRow& b);

CensusRow make_row(const CoverCountReport& report);
CensusRow make_row(const CoverCountReport& report, const VerifyVerdict& verdict);

/// One row per coprime (m, n), 2 <= m <= m_max, 2 <= n <= n_max, m ascending
/// then n. DomainError when a bound is below 2 or g < 2.
std::vector<CensusRow> build_census(int g, std::int64_t m_max, std::int64_t n_max,
                                    bool run_verification = false,
                                    const VerifyOptions& options = {});

inline constexpr const char* kCensusCsvHeader = "g,m,n,T,N_cyclic,C_total,verified";

std::string census_to_csv(const std::vector<CensusRow>& rows);
/// DomainError on a malformed header or row.
std::vector<CensusRow> census_from_csv(const std::string& text);

std::string row_to_json(const CensusRow& row, int indent = -1);
std::string census_to_json(const std::vector<CensusRow>& rows, int indent = 2);
std::vector<CensusRow> census_from_json(const std::string& text);
CensusRow row_from_json(const std::string& text);

}  // namespace etale
