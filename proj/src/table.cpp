#include "rsq/table.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rsq {

const std::string& Table::value_text(int attr, ValueId v) const {
  static const std::string star = "*";
  if (v == kStar) return star;
  return dicts_[attr][static_cast<std::size_t>(v)];
}

int Table::attr_index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<ValueId> Table::condition_tuple(std::size_t row) const {
  std::vector<ValueId> out;
  out.reserve(cond_.size());
  for (int a : cond_) out.push_back(columns_[a][row]);
  return out;
}

std::vector<ValueId> Table::decision_tuple(std::size_t row) const {
  std::vector<ValueId> out;
  out.reserve(dec_.size());
  for (int a : dec_) out.push_back(columns_[a][row]);
  return out;
}

std::string Table::decision_label(std::size_t row) const {
  std::string out;
  for (std::size_t i = 0; i < dec_.size(); ++i) {
    if (i) out += '|';
    out += value_text(dec_[i], columns_[dec_[i]][row]);
  }
  return out;
}

Table Table::from_columns(std::vector<std::string> names,
                          std::vector<std::vector<ValueId>> columns,
                          std::vector<std::vector<std::string>> dicts,
                          std::vector<int> condition_attrs,
                          std::vector<int> decision_attrs,
                          std::vector<int> row_ids) {
  Table t;
  t.names_ = std::move(names);
  t.columns_ = std::move(columns);
  t.dicts_ = std::move(dicts);
  t.cond_ = std::move(condition_attrs);
  t.dec_ = std::move(decision_attrs);
  t.row_ids_ = std::move(row_ids);
  t.n_rows_ = t.columns_.empty() ? 0 : t.columns_[0].size();
  for (const auto& c : t.columns_)
    if (c.size() != t.n_rows_) throw std::logic_error("column length mismatch");
  return t;
}

Table Table::select_rows(const std::vector<std::size_t>& keep) const {
  std::vector<std::vector<ValueId>> cols(columns_.size());
  for (std::size_t a = 0; a < columns_.size(); ++a) {
    cols[a].reserve(keep.size());
    for (std::size_t r : keep) cols[a].push_back(columns_[a][r]);
  }
  std::vector<int> ids;
  ids.reserve(keep.size());
  for (std::size_t r : keep) ids.push_back(row_ids_[r]);
  return from_columns(names_, std::move(cols), dicts_, cond_, dec_, std::move(ids));
}

Table Table::project(const std::vector<int>& attrs) const {
  std::vector<std::string> names;
  std::vector<std::vector<ValueId>> cols;
  std::vector<std::vector<std::string>> dicts;
  std::vector<int> cond, dec;
  for (int a : attrs) {
    cond.push_back(static_cast<int>(names.size()));
    names.push_back(names_[a]);
    cols.push_back(columns_[a]);
    dicts.push_back(dicts_[a]);
  }
  for (int a : dec_) {
    dec.push_back(static_cast<int>(names.size()));
    names.push_back(names_[a]);
    cols.push_back(columns_[a]);
    dicts.push_back(dicts_[a]);
  }
  return from_columns(std::move(names), std::move(cols), std::move(dicts),
                      std::move(cond), std::move(dec), row_ids_);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// One CSV record; handles quoted fields spanning lines.
bool read_record(std::istream& in, char delim, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool quoted = false, started = false, field_quoted = false;
  int ch;
  while ((ch = in.get()) != EOF) {
    started = true;
    char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
      field_quoted = true;
      continue;
    }
    if (c == delim) {
      out.push_back(field_quoted ? field : trim(field));
      field.clear();
      field_quoted = false;
      continue;
    }
    if (c == '\n') {
      out.push_back(field_quoted ? field : trim(field));
      return true;
    }
    if (c == '\r') continue;
    field += c;
  }
  if (!started) return false;
  out.push_back(field_quoted ? field : trim(field));
  return true;
}

}  // namespace

Table load_table(std::istream& in, const IngestConfig& cfg) {
  std::vector<std::string> header;
  if (!read_record(in, cfg.delimiter, header) || header.empty())
    throw ParseError("empty input: header row required");
  {
    std::set<std::string> seen;
    for (const auto& h : header)
      if (!seen.insert(h).second)
        throw ParseError("duplicate header name \"" + h + "\"");
  }

  std::vector<std::vector<std::string>> raw(header.size());
  std::vector<std::string> rec;
  std::size_t data_row = 0;
  while (read_record(in, cfg.delimiter, rec)) {
    if (rec.size() == 1 && rec[0].empty()) continue;  // blank line
    ++data_row;
    if (rec.size() != header.size())
      throw ParseError("ragged row " + std::to_string(data_row) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(rec.size()));
    for (std::size_t a = 0; a < header.size(); ++a) raw[a].push_back(rec[a]);
  }
  if (data_row == 0) throw ParseError("empty body");

  std::vector<int> dec;
  if (cfg.no_decision) {
    // attribute-only table
  } else if (cfg.decision_attrs.empty()) {
    dec.push_back(static_cast<int>(header.size()) - 1);
  } else {
    for (const auto& name : cfg.decision_attrs) {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end())
        throw ParseError("decision column \"" + name + "\" not in header");
      dec.push_back(static_cast<int>(it - header.begin()));
    }
  }
  std::vector<int> cond;
  for (std::size_t a = 0; a < header.size(); ++a)
    if (std::find(dec.begin(), dec.end(), static_cast<int>(a)) == dec.end())
      cond.push_back(static_cast<int>(a));
  if (cond.empty()) throw ParseError("no condition attributes left");

  // Intern per attribute in textual order.
  std::vector<std::vector<ValueId>> cols(header.size());
  std::vector<std::vector<std::string>> dicts(header.size());
  for (std::size_t a = 0; a < header.size(); ++a) {
    std::map<std::string, ValueId> ids;
    for (const auto& v : raw[a])
      if (v != cfg.missing_token && v != "*") ids.emplace(v, 0);
    ValueId next = 0;
    for (auto& [text, id] : ids) {
      id = next++;
      dicts[a].push_back(text);
    }
    cols[a].reserve(data_row);
    for (const auto& v : raw[a])
      cols[a].push_back((v == cfg.missing_token || v == "*") ? kStar
                                                             : ids.at(v));
  }

  std::vector<int> ids(data_row);
  std::iota(ids.begin(), ids.end(), 1);
  return Table::from_columns(std::vector<std::string>(header.begin(), header.end()),
                             std::move(cols), std::move(dicts), std::move(cond),
                             std::move(dec), std::move(ids));
}

Table load_table_file(const std::string& path, const IngestConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  return load_table(in, cfg);
}

int RegionPartition::region_of(std::size_t pos) const {
  for (std::size_t i = 0; i < regions.size(); ++i)
    if (pos >= regions[i].first && pos <= regions[i].last)
      return static_cast<int>(i);
  return -1;
}

RegionPartition sort_by_decision(const Table& t) {
  RegionPartition p;
  p.perm.resize(t.rows());
  std::iota(p.perm.begin(), p.perm.end(), std::size_t{0});
  const auto& dec = t.decision_attrs();
  std::stable_sort(p.perm.begin(), p.perm.end(),
                   [&](std::size_t a, std::size_t b) {
                     for (int d : dec) {
                       ValueId va = t.value(a, d), vb = t.value(b, d);
                       if (va != vb) return va < vb;
                     }
                     return false;
                   });
  p.ad.resize(t.rows());
  for (std::size_t pos = 0; pos < p.perm.size(); ++pos) p.ad[p.perm[pos]] = pos;
  for (std::size_t pos = 0; pos < p.perm.size(); ++pos) {
    if (pos == 0 || t.decision_tuple(p.perm[pos]) != t.decision_tuple(p.perm[pos - 1])) {
      Region r;
      r.first = pos;
      r.last = pos;
      r.label = t.decision_label(p.perm[pos]);
      p.regions.push_back(r);
    } else {
      p.regions.back().last = pos;
    }
  }
  return p;
}

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<ValueId>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (ValueId x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

DedupeResult dedupe(const Table& t) {
  std::unordered_map<std::vector<ValueId>, std::size_t, TupleHash> seen;
  DedupeResult out;
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::vector<ValueId> key;
    for (int a : t.condition_attrs()) key.push_back(t.value(r, a));
    for (int a : t.decision_attrs()) key.push_back(t.value(r, a));
    auto [it, fresh] = seen.emplace(std::move(key), keep.size());
    if (fresh) {
      keep.push_back(r);
      out.multiplicity.push_back(1);
      out.members.push_back({r});
    } else {
      ++out.multiplicity[it->second];
      out.members[it->second].push_back(r);
    }
  }
  out.table = t.select_rows(keep);
  return out;
}

ConsistencySplit separate_inconsistent(const Table& t) {
  std::unordered_map<std::vector<ValueId>, std::size_t, TupleHash> cls;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    auto key = t.condition_tuple(r);
    auto [it, fresh] = cls.emplace(std::move(key), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(r);
  }
  std::vector<std::size_t> pos, bnd;
  for (const auto& g : groups) {
    bool pure = true;
    auto d0 = t.decision_tuple(g[0]);
    for (std::size_t i = 1; i < g.size() && pure; ++i)
      pure = (t.decision_tuple(g[i]) == d0);
    auto& dst = pure ? pos : bnd;
    for (std::size_t r : g) dst.push_back(r);
  }
  std::sort(pos.begin(), pos.end());
  std::sort(bnd.begin(), bnd.end());
  ConsistencySplit out;
  out.positive = t.select_rows(pos);
  out.boundary = t.select_rows(bnd);
  out.boundary_rows = std::move(bnd);
  return out;
}

Table decisionize(const Table& t, const std::string& label_attr) {
  if (!t.decision_attrs().empty())
    throw std::invalid_argument("decisionize expects an attribute-only table");
  // Sort rows under all attributes; identical rows share a class label.
  std::vector<std::size_t> order(t.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto tuple_of = [&](std::size_t r) {
    std::vector<ValueId> v;
    for (int a : t.condition_attrs()) v.push_back(t.value(r, a));
    return v;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tuple_of(a) < tuple_of(b);
  });
  std::vector<ValueId> labels(t.rows(), 0);
  ValueId next = -1;
  std::vector<ValueId> prev;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto cur = tuple_of(order[i]);
    if (i == 0 || cur != prev) ++next;
    labels[order[i]] = next;
    prev = std::move(cur);
  }
  std::size_t n_classes = static_cast<std::size_t>(next) + 1;
  std::size_t width = std::to_string(n_classes - 1).size();
  std::vector<std::string> dict;
  for (std::size_t i = 0; i < n_classes; ++i) {
    std::string s = std::to_string(i);
    dict.push_back("g" + std::string(width - s.size(), '0') + s);
  }

  std::vector<std::string> names = t.attr_names();
  names.push_back(label_attr);
  std::vector<std::vector<ValueId>> cols;
  std::vector<std::vector<std::string>> dicts;
  for (std::size_t a = 0; a < t.attr_count(); ++a) {
    cols.push_back(t.column(static_cast<int>(a)));
    std::vector<std::string> d;
    for (std::size_t v = 0; v < t.domain_size(static_cast<int>(a)); ++v)
      d.push_back(t.value_text(static_cast<int>(a), static_cast<ValueId>(v)));
    dicts.push_back(std::move(d));
  }
  cols.push_back(std::move(labels));
  dicts.push_back(std::move(dict));
  std::vector<int> cond = t.condition_attrs();
  std::vector<int> dec = {static_cast<int>(names.size()) - 1};
  return Table::from_columns(std::move(names), std::move(cols), std::move(dicts),
                             std::move(cond), std::move(dec), t.row_ids());
}

}  // namespace rsq
