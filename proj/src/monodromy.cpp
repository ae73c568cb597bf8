#include <algorithm>
#include <map>
#include <set>

#include "atlas/classify.hpp"
#include "atlas/mm.hpp"

namespace atlas {

namespace {

std::vector<Rat> negate_all(const std::vector<Rat>& qs) {
  std::vector<Rat> out;
  out.reserve(qs.size());
  for (const Rat& q : qs) out.push_back((-q).mod(2));
  return out;
}

std::set<EValue> evalue_span(const std::vector<EValue>& gens) {
  std::set<EValue> span;
  span.insert(EValue{});
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<EValue> cur(span.begin(), span.end());
    for (const auto& a : cur)
      for (const auto& g : gens) {
        EValue b = a.add(g);
        if (!span.count(b)) {
          span.insert(b);
          grew = true;
        }
      }
  }
  return span;
}

EValue reduce_mod(const EValue& v, const std::set<EValue>& span) {
  EValue best = v;
  for (const auto& s : span) {
    EValue w = v.add(s);
    if (w < best) best = w;
  }
  return best;
}

std::string render_bracket_groups(const SingularitySet& s,
                                  const std::map<int, std::vector<size_t>>& groups,
                                  const std::set<size_t>& bracketed_types,
                                  const std::vector<std::pair<RootType, int>>& type_mult) {
  // brackets first, then the remaining components in canonical order
  std::vector<std::string> pieces;
  for (const auto& [cls, tys] : groups) {
    std::vector<RootType> content;
    for (size_t ti : tys)
      for (int i = 0; i < type_mult[ti].second; ++i) content.push_back(type_mult[ti].first);
    std::sort(content.begin(), content.end());
    SingularitySet part = make_set(content);
    pieces.push_back("[" + part.spec_plain() + "]");
  }
  std::vector<RootType> rest;
  for (size_t ti = 0; ti < type_mult.size(); ++ti)
    if (!bracketed_types.count(ti))
      for (int i = 0; i < type_mult[ti].second; ++i) rest.push_back(type_mult[ti].first);
  std::sort(rest.begin(), rest.end());
  if (!rest.empty()) pieces.push_back(make_set(rest).spec_plain());
  std::string out;
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (i) out += "+";
    out += pieces[i];
  }
  return out;
}

}  // namespace

MonodromyInfo monodromy_info(const SingularitySet& s, const RefData& data) {
  MonodromyInfo mi;
  // type multiplicities in canonical order
  std::vector<std::pair<RootType, int>> type_mult;
  for (size_t i = 0; i < s.parts.size(); ++i) {
    if (!type_mult.empty() && type_mult.back().first == s.parts[i])
      type_mult.back().second++;
    else
      type_mult.push_back({s.parts[i], 1});
  }

  if (s.mu() == 19) {
    // permutations of the E8 points only
    mi.mu19_rule = true;
    std::map<int, std::vector<size_t>> groups;
    std::set<size_t> bracketed;
    int next = 0;
    for (size_t ti = 0; ti < type_mult.size(); ++ti) {
      const auto& [t, m] = type_mult[ti];
      if (m >= 2 && !(t.kind == RootKind::E && t.n == 8)) {
        groups[next++] = {ti};
        bracketed.insert(ti);
      }
    }
    mi.full = groups.empty();
    mi.brackets = render_bracket_groups(s, groups, bracketed, type_mult);
    return mi;
  }

  SetDiscriminant d = discr_of_set(s);
  GenusDescriptor tg = transcendental_genus_from_disc(s.mu(), discr_sh(d.form));
  EModule ep = e_plus_group(tg, s.spec_plain());
  if (ep.trivial()) {
    mi.full = true;
    return mi;
  }
  std::vector<SymGenerator> gens = sym_prime_generators(s, d);
  // span of flip/rotation values
  std::vector<EValue> flips;
  std::map<std::string, EValue> swap_value;  // by type
  for (const auto& g : gens) {
    EValue v = ep.eval_mirrors(negate_all(g.mirror_q));
    if (g.kind == SymGenerator::Kind::Swap)
      swap_value[s.parts[g.comp_a].str()] = v;
    else
      flips.push_back(v);
  }
  std::set<EValue> fspan = evalue_span(flips);
  // reduced transposition classes per repeated type
  std::map<int, std::vector<size_t>> groups;  // class id -> type indices
  std::set<size_t> bracketed;
  std::map<std::string, int> class_ids;
  std::vector<EValue> class_vals;
  for (size_t ti = 0; ti < type_mult.size(); ++ti) {
    const auto& [t, m] = type_mult[ti];
    if (m < 2) continue;
    EValue v{};
    auto it = swap_value.find(t.str());
    if (it != swap_value.end()) v = it->second;  // E8 swaps act trivially: v = 0
    EValue red = reduce_mod(v, fspan);
    if (red.is_zero()) continue;
    std::string key = std::to_string(red.mp) + "," + std::to_string(red.mq) + "," +
                      std::to_string(red.quot);
    if (!class_ids.count(key)) {
      class_ids[key] = (int)class_ids.size();
      class_vals.push_back(red);
    }
    int cid = class_ids[key];
    groups[cid].push_back(ti);
    bracketed.insert(ti);
    mi.type_values.push_back({t.str(), cid});
  }
  mi.full = groups.empty();
  if (!mi.full) {
    // bracket semantics require the distinct classes to be F2-independent
    std::set<EValue> all = evalue_span(class_vals);
    if ((i64)all.size() != (i64)1 << class_vals.size())
      throw std::logic_error("monodromy: bracket classes not independent for " + s.spec_plain());
    mi.brackets = render_bracket_groups(s, groups, bracketed, type_mult);
  }
  (void)data;
  return mi;
}

bool eplus_single_prime_hypotheses(const SingularitySet& s, i64 p) {
  SetDiscriminant d = discr_of_set(s);
  GenusDescriptor tg = transcendental_genus_from_disc(s.mu(), discr_sh(d.form));
  EModule ep = e_plus_group(tg, s.spec_plain());
  if (ep.order() != 2) return false;
  const auto& irr = ep.irregular_primes();
  if (std::find(irr.begin(), irr.end(), p) == irr.end()) return false;
  if (irr.size() > 2) return false;
  return ep.ep_dim(p) == 1;
}

}  // namespace atlas
