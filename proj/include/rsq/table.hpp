#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsq {

// Interned value id. Regular values get 0..k-1 per attribute, in textual
// order, so sorting by id equals sorting by text. kStar is the reserved
// "any value" marker and sorts before every regular value.
using ValueId = std::int32_t;
inline constexpr ValueId kStar = -1;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IngestConfig {
  std::vector<std::string> decision_attrs;  // empty: last column
  std::string missing_token = "?";
  char delimiter = ',';
  bool no_decision = false;  // attribute-only table (for decisionize)
};

// Immutable columnar table of interned categorical values.
class Table {
 public:
  Table() = default;

  std::size_t rows() const { return n_rows_; }
  std::size_t attr_count() const { return names_.size(); }
  const std::vector<std::string>& attr_names() const { return names_; }
  const std::vector<int>& condition_attrs() const { return cond_; }
  const std::vector<int>& decision_attrs() const { return dec_; }

  const std::vector<ValueId>& column(int attr) const { return columns_[attr]; }
  ValueId value(std::size_t row, int attr) const { return columns_[attr][row]; }
  const std::string& value_text(int attr, ValueId v) const;
  std::size_t domain_size(int attr) const { return dicts_[attr].size(); }

  // Stable original ids (1-based CSV data-row indices by default).
  const std::vector<int>& row_ids() const { return row_ids_; }

  int attr_index(const std::string& name) const;  // -1 when absent

  std::vector<ValueId> condition_tuple(std::size_t row) const;
  std::vector<ValueId> decision_tuple(std::size_t row) const;
  std::string decision_label(std::size_t row) const;

  // Construction helpers (used by loaders and by derived-table operations).
  static Table from_columns(std::vector<std::string> names,
                            std::vector<std::vector<ValueId>> columns,
                            std::vector<std::vector<std::string>> dicts,
                            std::vector<int> condition_attrs,
                            std::vector<int> decision_attrs,
                            std::vector<int> row_ids);

  // Row-subset copy; keeps dictionaries and row ids.
  Table select_rows(const std::vector<std::size_t>& keep) const;

  // Projection onto (attrs ∪ decision); attrs keeps the given order.
  Table project(const std::vector<int>& attrs) const;

 private:
  std::size_t n_rows_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<ValueId>> columns_;
  std::vector<std::vector<std::string>> dicts_;
  std::vector<int> cond_;
  std::vector<int> dec_;
  std::vector<int> row_ids_;
};

// CSV with a header row, RFC-4180-style quoting, UTF-8. Values are trimmed
// of surrounding whitespace unless quoted. The missing token maps to kStar.
Table load_table(std::istream& in, const IngestConfig& cfg = {});
Table load_table_file(const std::string& path, const IngestConfig& cfg = {});

// One contiguous run of the decision-sorted row permutation.
struct Region {
  std::size_t first = 0;  // positions, 0-based, inclusive
  std::size_t last = 0;
  std::string label;  // decision tuple text
};

// Decision-sorted view: perm[pos] = row, ad[row] = pos, contiguous regions
// ordered by decision tuple.
struct RegionPartition {
  std::vector<std::size_t> perm;
  std::vector<std::size_t> ad;
  std::vector<Region> regions;
  int region_of(std::size_t pos) const;
};

RegionPartition sort_by_decision(const Table& t);

struct DedupeResult {
  Table table;
  // multiplicity[i] = number of input rows collapsed into output row i
  std::vector<std::size_t> multiplicity;
  // representatives[i] = indices of collapsed input rows (first = kept one)
  std::vector<std::vector<std::size_t>> members;
};

// Collapses rows identical on all of C ∪ D; first occurrence is kept.
DedupeResult dedupe(const Table& t);

struct ConsistencySplit {
  Table positive;
  Table boundary;
  std::vector<std::size_t> boundary_rows;  // row indices in t
};

// Boundary = rows whose full condition tuple occurs with >= 2 distinct
// decision tuples.
ConsistencySplit separate_inconsistent(const Table& t);

// Attribute-only table -> decision table with one synthetic label per
// equivalence class of identical rows.
Table decisionize(const Table& t, const std::string& label_attr = "class");

}  // namespace rsq
