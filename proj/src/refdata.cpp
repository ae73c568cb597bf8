#include "atlas/refdata.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace atlas {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      out.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  out.push_back(cur);
  return out;
}

MaximizingRow parse_row(const std::string& line) {
  auto cols = split_tabs(line);
  if (cols.size() < 3) throw std::runtime_error("reference row needs at least 3 columns: " + line);
  MaximizingRow row;
  row.set = parse_set_spec(cols[0]);
  row.r = std::stoi(cols[1]);
  row.c = std::stoi(cols[2]);
  if (cols.size() >= 4 && !cols[3].empty()) {
    // markers: comma-separated component types, one per swapped pair
    std::string cur;
    auto flush = [&]() {
      if (cur.empty()) return;
      SingularitySet t = parse_set_spec(cur);
      if (t.parts.size() != 1) throw std::runtime_error("bad marker: " + cur);
      row.swapped_pairs.push_back(t.parts[0]);
      cur.clear();
    };
    for (char c : cols[3]) {
      if (c == ',')
        flush();
      else
        cur += c;
    }
    flush();
  }
  return row;
}

std::vector<MaximizingRow> load_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference file " + path);
  std::vector<MaximizingRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(parse_row(line));
  }
  return rows;
}

}  // namespace

const MaximizingRow* RefData::find_ns(const SingularitySet& s) const {
  for (const auto& row : ns)
    if (row.set.same_parts(s)) return &row;
  return nullptr;
}

const MaximizingRow* RefData::find_torus(const SingularitySet& s) const {
  for (const auto& row : torus)
    if (row.set.same_parts(s)) return &row;
  return nullptr;
}

std::optional<std::string> RefData::override_value(const SingularitySet& s,
                                                   const std::string& key) const {
  auto it = overrides.find(s.spec_plain());
  if (it == overrides.end()) return std::nullopt;
  auto kt = it->second.find(key);
  if (kt == it->second.end()) return std::nullopt;
  return kt->second;
}

RefData load_refdata(const std::string& dir) {
  RefData data;
  data.ns = load_rows(dir + "/maximizing_ns.tsv");
  data.torus = load_rows(dir + "/maximizing_torus.tsv");
  {
    std::ifstream in(dir + "/manual_overrides.tsv");
    if (!in) throw std::runtime_error("cannot open " + dir + "/manual_overrides.tsv");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto cols = split_tabs(line);
      if (cols.size() < 2) throw std::runtime_error("bad override row: " + line);
      SingularitySet s = parse_set_spec(cols[0]);
      for (size_t i = 1; i < cols.size(); ++i) {
        auto eq = cols[i].find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad override entry: " + cols[i]);
        data.overrides[s.spec_plain()][cols[i].substr(0, eq)] = cols[i].substr(eq + 1);
      }
    }
  }
  if (data.ns.size() != 110)
    throw std::runtime_error("expected 110 maximizing rows, got " + std::to_string(data.ns.size()));
  if (data.torus.size() != 15)
    throw std::runtime_error("expected 15 maximizing torus rows, got " +
                             std::to_string(data.torus.size()));
  return data;
}

}  // namespace atlas
