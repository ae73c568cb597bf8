#include "atlas/classify.hpp"

#include <algorithm>
#include <set>

namespace atlas {

std::string tristate_str(TriState t) {
  switch (t) {
    case TriState::Yes:
      return "yes";
    case TriState::No:
      return "no";
    default:
      return "undetermined";
  }
}

namespace {

std::vector<Rat> negate_all(const std::vector<Rat>& qs) {
  std::vector<Rat> out;
  out.reserve(qs.size());
  for (const Rat& q : qs) out.push_back((-q).mod(2));
  return out;
}

// span size of a set of EValues under add()
i64 span_order(const std::vector<EValue>& gens) {
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
  return (i64)span.size();
}

}  // namespace

i64 Classifier::dperp_image_order(const SingularitySet& s, const EModule& em) const {
  if (em.trivial()) return 1;
  std::vector<SymGenerator> gens = sym_prime_generators(s);
  std::vector<EValue> vals;
  for (const auto& g : gens) vals.push_back(em.eval_mirrors(negate_all(g.mirror_q)));
  return span_order(vals);
}

bool Classifier::is_symmetric_primitive(const SingularitySet& s, const GenusDescriptor& tgenus) const {
  Gamma0Mask tilde = sigma_tilde_global(tgenus);
  if ((tilde | kGamma0MM) != kGamma0MM) return true;  // Ker d contains det_+ = -1
  EModule ep = e_plus_group(tgenus, s.spec_plain());
  if (ep.trivial()) return false;
  EModule e = e_group(tgenus, s.spec_plain());
  // look for a combination with e = 0 and e_+ != 0: compare F2 ranks
  std::vector<SymGenerator> gens = sym_prime_generators(s);
  std::vector<std::pair<EValue, EValue>> vals;
  for (const auto& g : gens) {
    auto qs = negate_all(g.mirror_q);
    vals.push_back({e.trivial() ? EValue{} : e.eval_mirrors(qs), ep.eval_mirrors(qs)});
  }
  // rank of (e) alone vs rank of (e, e_+) pairs
  std::set<std::pair<EValue, EValue>> span_pairs;
  std::set<EValue> span_e;
  span_pairs.insert({EValue{}, EValue{}});
  span_e.insert(EValue{});
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<EValue, EValue>> cur(span_pairs.begin(), span_pairs.end());
    for (const auto& a : cur)
      for (const auto& g : vals) {
        std::pair<EValue, EValue> b{a.first.add(g.first), a.second.add(g.second)};
        if (!span_pairs.count(b)) {
          span_pairs.insert(b);
          grew = true;
        }
      }
  }
  for (const auto& [ev, epv] : span_pairs)
    if (ev.is_zero() && !epv.is_zero()) return true;
  return false;
}

FamilyReport Classifier::classify_nonspecial(const SingularitySet& s) const {
  FamilyReport rep;
  int mu = s.mu();
  if (mu > 19) return rep;
  if (mu == 19) {
    const MaximizingRow* row = data_.find_ns(s);
    rep.from_reference = true;
    if (!row) return rep;
    rep.realized = true;
    rep.r = row->r;
    rep.c = row->c;
    rep.types = row->r + row->c;
    rep.symmetric = row->r > 0;
    rep.real_curve = row->r > 0 ? TriState::Yes : TriState::No;
    rep.note = "reference data";
    return rep;
  }
  SetDiscriminant d = discr_of_set(s);
  FiniteQuadraticForm sh = discr_sh(d.form);
  GenusDescriptor gsh{1, mu, sh};
  rep.realized = embeds_primitively_in_L(gsh);
  if (!rep.realized) return rep;
  GenusDescriptor tg = transcendental_genus_from_disc(mu, sh);
  EModule em = e_group(tg, s.spec_plain());
  rep.e_desc = em.describe();
  i64 im = dperp_image_order(s, em);
  rep.types = (int)(em.order() / im);
  rep.symmetric = is_symmetric_primitive(s, tg);
  if (rep.symmetric) {
    rep.r = rep.types;
    rep.c = 0;
    auto ov = data_.override_value(s, "real_curve");
    if (ov)
      rep.real_curve = (*ov == "yes") ? TriState::Yes : (*ov == "no") ? TriState::No
                                                                      : TriState::Undetermined;
    else if (real_by_perturbation(s, false) || real_by_square2(s))
      rep.real_curve = TriState::Yes;
    else
      rep.real_curve = TriState::Undetermined;
  } else {
    rep.r = 0;
    rep.c = rep.types;
    rep.real_curve = TriState::No;
  }
  return rep;
}

FamilyReport Classifier::classify_torus(const SingularitySet& s) const {
  FamilyReport rep;
  int mu = s.mu();
  if (mu > 19) return rep;
  if (mu == 19) {
    const MaximizingRow* row = data_.find_torus(s);
    rep.from_reference = true;
    if (!row) return rep;
    rep.realized = true;
    rep.r = row->r;
    rep.c = row->c;
    rep.types = row->r + row->c;
    rep.symmetric = row->r > 0;
    rep.real_curve = row->r > 0 ? TriState::Yes : TriState::No;
    rep.note = "reference data";
    return rep;
  }
  TorusAdmissibility ta = torus_admissible(s);
  if (!ta.admissible) return rep;
  FiniteQuadraticForm ext = extension_disc(s, *ta.beta);
  GenusDescriptor gext{1, mu, ext};
  rep.realized = embeds_primitively_in_L(gext);
  rep.inner = ta.inner_components;
  if (!rep.realized) return rep;
  GenusDescriptor tg = transcendental_genus_from_disc(mu, ext);
  i64 eo = e_order(tg);
  if (eo != 1)
    throw std::logic_error("torus family with nontrivial E(T) for " + s.spec_plain());
  rep.types = 1;
  rep.symmetric = true;
  rep.real_curve = TriState::Yes;
  rep.e_desc = "E order 1";
  return rep;
}

std::vector<std::pair<std::string, bool>> Classifier::classify_special_kernels(
    const SingularitySet& s) const {
  std::vector<std::pair<std::string, bool>> out;
  int mu = s.mu();
  if (mu > 19) return out;
  for (i64 n : {5, 7}) {
    auto cands = kernel_candidates(s, n);
    for (const auto& k : cands) {
      FiniteQuadraticForm ext = extension_disc(s, k);
      bool ok = embeds_primitively_in_L(GenusDescriptor{1, mu, ext});
      out.push_back({k.signature_str(), ok});
    }
  }
  for (int kd : {2, 3}) {
    // cheap pool prefilter: need at least the subgroup's worth of isotropic
    // order-3 elements passing the root condition
    auto cands = kernel_candidates_3k(s, kd);
    for (const auto& k : cands) {
      FiniteQuadraticForm ext = extension_disc(s, k);
      bool ok = embeds_primitively_in_L(GenusDescriptor{1, mu, ext});
      out.push_back({k.signature_str(), ok});
    }
  }
  return out;
}

ClassificationReport Classifier::classify_all(const SingularitySet& s) const {
  ClassificationReport rep;
  rep.set = s;
  rep.ns = classify_nonspecial(s);
  rep.torus = classify_torus(s);
  rep.special = classify_special_kernels(s);
  if (rep.ns && rep.ns->realized) rep.monodromy = monodromy_group(s);
  return rep;
}

std::string Classifier::monodromy_group(const SingularitySet& s) const {
  MonodromyInfo mi = monodromy_info(s, data_);
  return mi.brackets;
}

}  // namespace atlas
