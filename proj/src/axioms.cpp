#include "stablecouples/axioms.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "stablecouples/set_order.hpp"

namespace stablecouples {

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Responsive: return "responsive";
    case Axiom::Cpi: return "cpi";
    case Axiom::CoupleResponsive: return "couple_responsive";
    case Axiom::Rvt: return "rvt";
    case Axiom::Rf: return "rf";
    case Axiom::Srf: return "srf";
    case Axiom::Scpi: return "scpi";
    case Axiom::Cpc: return "cpc";
    case Axiom::Scpc: return "scpc";
  }
  return "?";
}

namespace {

AxiomVerdict pass(Axiom a) { return {a, true, std::nullopt}; }
AxiomVerdict fail(Axiom a, AxiomWitness w) { return {a, false, std::move(w)}; }

}  // namespace

AxiomVerdict check_responsive_order(const Ranking& individual, int capacity,
                                    const std::vector<std::vector<int>>& order,
                                    int n_doctors) {
  std::map<std::vector<int>, int> pos;
  for (int p = 0; p < static_cast<int>(order.size()); ++p) {
    std::vector<int> s = order[p];
    std::sort(s.begin(), s.end());
    if (!pos.emplace(std::move(s), p).second)
      throw std::invalid_argument("set order repeats a feasible set");
  }
  auto all = feasible_sets(n_doctors, capacity);
  if (pos.size() != all.size())
    throw std::invalid_argument("set order is not total over the feasible sets");
  for (const auto& s : all)
    if (!pos.count(s))
      throw std::invalid_argument("set order is not total over the feasible sets");

  int none = n_doctors;  // the vacancy element of the individual ranking

  // Clause (i): restriction to individuals.  The empty set plays the vacancy.
  auto unit = [&](int x) {
    return x == none ? std::vector<int>{} : std::vector<int>{x};
  };
  for (int x = 0; x <= n_doctors; ++x)
    for (int y = x + 1; y <= n_doctors; ++y) {
      bool by_order = pos.at(unit(x)) < pos.at(unit(y));
      bool by_individual = individual.prefers(x, y);
      if (by_order != by_individual)
        return fail(Axiom::Responsive,
                    ResponsiveWitness{-1, 1, {}, unit(x), unit(y)});
    }

  // Clause (ii): unions with a common disjoint part compare like their parts.
  std::vector<int> members(n_doctors);
  std::iota(members.begin(), members.end(), 0);
  for (unsigned base_mask = 0; base_mask + 1 < (1u << n_doctors); ++base_mask) {
    std::vector<int> base;
    for (int d = 0; d < n_doctors; ++d)
      if (base_mask & (1u << d)) base.push_back(d);
    std::vector<int> rest;
    for (int d = 0; d < n_doctors; ++d)
      if (!(base_mask & (1u << d))) rest.push_back(d);
    int r = static_cast<int>(rest.size());
    for (unsigned m1 = 0; m1 < (1u << r); ++m1)
      for (unsigned m2 = m1 + 1; m2 < (1u << r); ++m2) {
        std::vector<int> a = base, b = base, da, db;
        for (int i = 0; i < r; ++i) {
          if (m1 & (1u << i)) { a.push_back(rest[i]); da.push_back(rest[i]); }
          if (m2 & (1u << i)) { b.push_back(rest[i]); db.push_back(rest[i]); }
        }
        if (static_cast<int>(a.size()) > capacity ||
            static_cast<int>(b.size()) > capacity)
          continue;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        bool joined = pos.at(a) < pos.at(b);
        bool apart = pos.at(da) < pos.at(db);
        if (joined != apart)
          return fail(Axiom::Responsive, ResponsiveWitness{-1, 2, base, da, db});
      }
  }
  return pass(Axiom::Responsive);
}

AxiomVerdict check_responsive_hospital(const MarketInstance& inst, int hospital) {
  const HospitalPref& hp = inst.hospital_prefs.at(hospital);
  if (hp.extension != SetExtension::Explicit)
    throw std::invalid_argument("hospital " + inst.hospitals.at(hospital).id +
                                " carries no explicit set order");
  AxiomVerdict v = check_responsive_order(hp.individual,
                                          inst.hospitals.at(hospital).capacity,
                                          hp.explicit_order, inst.doctor_count());
  if (!v.holds) std::get<ResponsiveWitness>(*v.witness).hospital = hospital;
  return v;
}

CpiResult check_cpi(const MarketInstance& inst) {
  CpiResult res;
  const Ranking& ref = inst.hospital_prefs.at(0).individual;
  for (int h = 1; h < inst.hospital_count(); ++h) {
    const Ranking& other = inst.hospital_prefs[h].individual;
    for (int p = 0; p < ref.size(); ++p)
      if (ref.at(p) != other.at(p)) {
        res.verdict = fail(Axiom::Cpi, CpiWitness{0, h, ref.at(p), other.at(p)});
        return res;
      }
  }
  res.verdict = pass(Axiom::Cpi);
  res.common = ref;
  for (const Couple& c : inst.couples) {
    Couple n = c;
    if (ref.prefers(c.m, c.f)) std::swap(n.f, n.m);
    res.normalized_couples.push_back(n);
  }
  res.couple_order_by_m.resize(inst.couple_count());
  std::iota(res.couple_order_by_m.begin(), res.couple_order_by_m.end(), 0);
  std::sort(res.couple_order_by_m.begin(), res.couple_order_by_m.end(),
            [&](int a, int b) {
              return ref.position_of(res.normalized_couples[a].m) <
                     ref.position_of(res.normalized_couples[b].m);
            });
  return res;
}

MarketInstance normalize_for_cpi(const MarketInstance& inst) {
  CpiResult r = check_cpi(inst);
  if (!r.verdict.holds)
    throw PreconditionError("cannot normalize couple labels: CPI fails");
  MarketInstance out = inst;
  for (int c = 0; c < out.couple_count(); ++c)
    if (out.couples[c].f != r.normalized_couples[c].f) swap_couple_labels(out, c);
  std::vector<Couple> couples;
  std::vector<Ranking> prefs;
  for (int c : r.couple_order_by_m) {
    couples.push_back(out.couples[c]);
    prefs.push_back(out.couple_prefs[c]);
  }
  out.couples = std::move(couples);
  out.couple_prefs = std::move(prefs);
  return out;
}

AxiomVerdict check_couple_responsive(const Ranking& cp, const Ranking& pf,
                                     const Ranking& pm, int n_hospitals) {
  int n = n_hospitals;
  for (int fixed = 0; fixed <= n; ++fixed)
    for (int x = 0; x <= n; ++x)
      for (int y = x + 1; y <= n; ++y) {
        int pxm = pair_code(fixed, x, n), pym = pair_code(fixed, y, n);
        if (cp.prefers(pxm, pym) != pm.prefers(x, y)) {
          int pref = cp.prefers(pxm, pym) ? pxm : pym;
          return fail(Axiom::CoupleResponsive,
                      CoupleOrderWitness{-1, pref, pref == pxm ? pym : pxm});
        }
        int pxf = pair_code(x, fixed, n), pyf = pair_code(y, fixed, n);
        if (cp.prefers(pxf, pyf) != pf.prefers(x, y)) {
          int pref = cp.prefers(pxf, pyf) ? pxf : pyf;
          return fail(Axiom::CoupleResponsive,
                      CoupleOrderWitness{-1, pref, pref == pxf ? pyf : pxf});
        }
      }
  return pass(Axiom::CoupleResponsive);
}

namespace {

// q weakly improves on p in both coordinates and strictly in at least one.
bool strictly_dominates(int q, int p, const Ranking& pf, const Ranking& pm, int n) {
  auto [qa, qb] = pair_decode(q, n);
  auto [pa, pb] = pair_decode(p, n);
  if (qa == pa && qb == pb) return false;
  return pf.position_of(qa) <= pf.position_of(pa) &&
         pm.position_of(qb) <= pm.position_of(pb);
}

bool is_together_pair(int code, int n) {
  auto [a, b] = pair_decode(code, n);
  return a == b;
}

}  // namespace

AxiomVerdict check_rvt(const Ranking& cp, const Ranking& pf, const Ranking& pm,
                       int n_hospitals) {
  // A pair may sit above an allocation that responsively dominates it only
  // when it is a same-hospital pair lifted over a split allocation.
  for (int i = 0; i < cp.size(); ++i)
    for (int j = i + 1; j < cp.size(); ++j) {
      int p = cp.at(i), q = cp.at(j);
      if (!strictly_dominates(q, p, pf, pm, n_hospitals)) continue;
      if (is_together_pair(p, n_hospitals) && !is_together_pair(q, n_hospitals))
        continue;  // togetherness lift
      return fail(Axiom::Rvt, RvtWitness{-1, p, q});
    }
  return pass(Axiom::Rvt);
}

namespace {

AxiomVerdict check_per_couple(const MarketInstance& inst, Axiom axiom,
                              AxiomVerdict (*core)(const Ranking&, const Ranking&,
                                                   const Ranking&, int)) {
  for (int c = 0; c < inst.couple_count(); ++c) {
    AxiomVerdict v = core(inst.couple_prefs[c], inst.doctor_prefs[inst.couples[c].f],
                          inst.doctor_prefs[inst.couples[c].m], inst.hospital_count());
    if (!v.holds) {
      if (auto* w = std::get_if<RvtWitness>(&*v.witness)) w->couple = c;
      if (auto* w = std::get_if<CoupleOrderWitness>(&*v.witness)) w->couple = c;
      v.axiom = axiom;
      return v;
    }
  }
  return AxiomVerdict{axiom, true, std::nullopt};
}

}  // namespace

AxiomVerdict check_rvt_all(const MarketInstance& inst) {
  return check_per_couple(inst, Axiom::Rvt, &check_rvt);
}

AxiomVerdict check_couple_responsive_all(const MarketInstance& inst) {
  return check_per_couple(inst, Axiom::CoupleResponsive, &check_couple_responsive);
}

AxiomVerdict check_rf(const MarketInstance& inst) {
  int n = inst.hospital_count();
  for (int c = 0; c < inst.couple_count(); ++c) {
    const Ranking& cp = inst.couple_prefs[c];
    const Ranking& pf = inst.doctor_prefs[inst.couples[c].f];
    for (int h = 0; h < n; ++h)
      for (int hp = 0; hp < n; ++hp) {
        if (hp == h) continue;
        if (cp.prefers(pair_code(h, h, n), pair_code(hp, h, n)) && pf.prefers(hp, h))
          return fail(Axiom::Rf, RfWitness{c, h, hp});
      }
  }
  return pass(Axiom::Rf);
}

AxiomVerdict check_srf(const MarketInstance& inst) {
  AxiomVerdict rf = check_rf(inst);
  if (!rf.holds) throw PreconditionError("srf requires the rf property");
  int n = inst.hospital_count();
  for (int c = 0; c < inst.couple_count(); ++c) {
    const Ranking& cp = inst.couple_prefs[c];
    const Ranking& pf = inst.doctor_prefs[inst.couples[c].f];
    const Ranking& pm = inst.doctor_prefs[inst.couples[c].m];
    for (int h = 0; h < n; ++h) {
      if (h == pf.top()) continue;
      for (int hp = 0; hp < n; ++hp) {
        if (hp == h) continue;
        if (cp.prefers(pair_code(h, h, n), pair_code(h, hp, n)) &&
            pm.prefers(hp, h) && pf.prefers(h, hp))
          return fail(Axiom::Srf, SrfWitness{c, h, hp});
      }
    }
  }
  return pass(Axiom::Srf);
}

AxiomVerdict check_scpi(const MarketInstance& inst) {
  CpiResult cpi = check_cpi(inst);
  if (!cpi.verdict.holds) throw PreconditionError("scpi requires cpi");
  const Ranking& common = *cpi.common;
  int D = inst.doctor_count();
  int min_capacity = inst.hospitals.empty() ? 0 : inst.hospitals[0].capacity;
  for (const auto& h : inst.hospitals) min_capacity = std::min(min_capacity, h.capacity);

  for (int c = 0; c < inst.couple_count(); ++c) {
    const Couple& pair = cpi.normalized_couples[c];
    int pos_f = common.position_of(pair.f);
    int pos_m = common.position_of(pair.m);
    int between = pos_m - pos_f - 1;
    int above_m = pos_m;
    bool m_last = pos_m == D - 1;
    if (!m_last) {
      if (between != 0 && above_m >= min_capacity)
        return fail(Axiom::Scpi, ScpiWitness{c, 1, between, above_m});
    } else {
      if (between > 1)
        return fail(Axiom::Scpi, ScpiWitness{c, 2, between, above_m});
    }
  }
  return pass(Axiom::Scpi);
}

AxiomVerdict check_cpc(const MarketInstance& inst) {
  for (int h = 0; h < inst.hospital_count(); ++h)
    for (int c = 0; c < inst.couple_count(); ++c)
      if (inst.hospital_prefs[h].individual.prefers(inst.couples[c].m,
                                                    inst.couples[c].f))
        return fail(Axiom::Cpc, CpcWitness{h, c});
  return pass(Axiom::Cpc);
}

AxiomVerdict check_scpc(const MarketInstance& inst) {
  AxiomVerdict cpc = check_cpc(inst);
  if (!cpc.holds) throw PreconditionError("scpc requires cpc");
  for (int c = 0; c < inst.couple_count(); ++c) {
    int f = inst.couples[c].f;
    for (int d = 0; d < inst.doctor_count(); ++d) {
      if (d == f) continue;
      int above = -1, below = -1;
      for (int h = 0; h < inst.hospital_count(); ++h) {
        if (inst.hospital_prefs[h].individual.prefers(d, f)) {
          if (above < 0) above = h;
        } else if (below < 0) {
          below = h;
        }
      }
      if (above >= 0 && below >= 0)
        return fail(Axiom::Scpc, ScpcWitness{d, c, above, below});
    }
  }
  return pass(Axiom::Scpc);
}

namespace {

bool replay_couple_projection(const MarketInstance& inst, const CoupleOrderWitness& w) {
  if (w.couple < 0) return false;
  int n = inst.hospital_count();
  const Ranking& cp = inst.couple_prefs.at(w.couple);
  const Ranking& pf = inst.doctor_prefs[inst.couples[w.couple].f];
  const Ranking& pm = inst.doctor_prefs[inst.couples[w.couple].m];
  auto [pa, pb] = pair_decode(w.preferred_pair, n);
  auto [qa, qb] = pair_decode(w.other_pair, n);
  if (!cp.prefers(w.preferred_pair, w.other_pair)) return false;
  if (pa == qa) return pm.prefers(qb, pb);
  if (pb == qb) return pf.prefers(qa, pa);
  return false;
}

}  // namespace

bool replay_axiom_witness(const MarketInstance& inst, const AxiomVerdict& verdict) {
  if (verdict.holds || !verdict.witness) return false;
  const AxiomWitness& w = *verdict.witness;

  if (const auto* r = std::get_if<ResponsiveWitness>(&w)) {
    if (r->hospital < 0) return false;
    const HospitalPref& hp = inst.hospital_prefs.at(r->hospital);
    auto position = [&](std::vector<int> s) { return explicit_position(hp, std::move(s)); };
    if (r->clause == 1) {
      auto element = [&](const std::vector<int>& s) {
        return s.empty() ? inst.none_doctor() : s[0];
      };
      return (position(r->a) < position(r->b)) !=
             hp.individual.prefers(element(r->a), element(r->b));
    }
    std::vector<int> ua = r->base, ub = r->base;
    ua.insert(ua.end(), r->a.begin(), r->a.end());
    ub.insert(ub.end(), r->b.begin(), r->b.end());
    return (position(ua) < position(ub)) != (position(r->a) < position(r->b));
  }
  if (const auto* c = std::get_if<CpiWitness>(&w)) {
    const Ranking& ra = inst.hospital_prefs.at(c->hospital_a).individual;
    const Ranking& rb = inst.hospital_prefs.at(c->hospital_b).individual;
    return ra.prefers(c->doctor_a, c->doctor_b) != rb.prefers(c->doctor_a, c->doctor_b);
  }
  if (const auto* o = std::get_if<CoupleOrderWitness>(&w))
    return replay_couple_projection(inst, *o);
  if (const auto* r = std::get_if<RvtWitness>(&w)) {
    if (r->couple < 0) return false;
    const Ranking& cp = inst.couple_prefs.at(r->couple);
    const Ranking& pf = inst.doctor_prefs[inst.couples[r->couple].f];
    const Ranking& pm = inst.doctor_prefs[inst.couples[r->couple].m];
    int n = inst.hospital_count();
    if (!cp.prefers(r->lifted_pair, r->dominating_pair)) return false;
    if (!strictly_dominates(r->dominating_pair, r->lifted_pair, pf, pm, n)) return false;
    return !(is_together_pair(r->lifted_pair, n) &&
             !is_together_pair(r->dominating_pair, n));
  }
  if (const auto* r = std::get_if<RfWitness>(&w)) {
    int n = inst.hospital_count();
    const Ranking& cp = inst.couple_prefs.at(r->couple);
    const Ranking& pf = inst.doctor_prefs[inst.couples[r->couple].f];
    return cp.prefers(pair_code(r->h, r->h, n), pair_code(r->h_prime, r->h, n)) &&
           pf.prefers(r->h_prime, r->h);
  }
  if (const auto* s = std::get_if<SrfWitness>(&w)) {
    int n = inst.hospital_count();
    const Ranking& cp = inst.couple_prefs.at(s->couple);
    const Ranking& pf = inst.doctor_prefs[inst.couples[s->couple].f];
    const Ranking& pm = inst.doctor_prefs[inst.couples[s->couple].m];
    return pf.top() != s->h &&
           cp.prefers(pair_code(s->h, s->h, n), pair_code(s->h, s->h_prime, n)) &&
           pm.prefers(s->h_prime, s->h) && pf.prefers(s->h, s->h_prime);
  }
  if (const auto* s = std::get_if<ScpiWitness>(&w)) {
    CpiResult cpi = check_cpi(inst);
    if (!cpi.verdict.holds) return false;
    const Couple& pair = cpi.normalized_couples.at(s->couple);
    const Ranking& common = *cpi.common;
    int between = common.position_of(pair.m) - common.position_of(pair.f) - 1;
    int above = common.position_of(pair.m);
    int min_capacity = inst.hospitals[0].capacity;
    for (const auto& h : inst.hospitals)
      min_capacity = std::min(min_capacity, h.capacity);
    bool m_last = common.position_of(pair.m) == inst.doctor_count() - 1;
    if (s->clause == 1) return !m_last && between != 0 && above >= min_capacity;
    return m_last && between > 1;
  }
  if (const auto* c = std::get_if<CpcWitness>(&w))
    return inst.hospital_prefs.at(c->hospital)
        .individual.prefers(inst.couples.at(c->couple).m, inst.couples.at(c->couple).f);
  if (const auto* s = std::get_if<ScpcWitness>(&w)) {
    int f = inst.couples.at(s->couple).f;
    return inst.hospital_prefs.at(s->hospital_above).individual.prefers(s->doctor, f) &&
           inst.hospital_prefs.at(s->hospital_below).individual.prefers(f, s->doctor);
  }
  return false;
}

}  // namespace stablecouples
