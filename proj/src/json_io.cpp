#include "stablecouples/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace stablecouples {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_text(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("", "not valid JSON");
  return doc;
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw ParseError(key, "missing field");
  return doc.at(key);
}

std::string id_string(const json& v, const std::string& path) {
  if (!v.is_string() || v.get<std::string>().empty())
    throw ParseError(path, "expected a non-empty string");
  return v.get<std::string>();
}

int hospital_slot(const MarketInstance& inst, const std::string& token,
                  const std::string& path) {
  if (token == kNoneToken) return inst.none_hospital();
  auto h = inst.hospital_by_id(token);
  if (!h) throw ParseError(path, "unknown hospital " + token);
  return *h;
}

}  // namespace

MarketInstance parse_instance(const std::string& text) {
  json doc = parse_text(text);
  MarketInstance inst;

  {
    const json& hs = field(doc, "hospitals");
    if (!hs.is_array() || hs.empty()) throw ParseError("hospitals", "expected an array");
    std::set<std::string> seen;
    for (size_t i = 0; i < hs.size(); ++i) {
      std::string path = "hospitals[" + std::to_string(i) + "]";
      const json& h = hs.at(i);
      std::string id = id_string(field(h, "id"), path + ".id");
      if (id == kNoneToken) throw ParseError(path + ".id", "reserved id");
      if (!seen.insert(id).second) throw ParseError(path + ".id", "duplicate id " + id);
      const json& cap = field(h, "capacity");
      if (!cap.is_number_integer() || cap.get<int>() < 1)
        throw ParseError(path + ".capacity", "expected a positive integer");
      inst.hospitals.push_back({id, cap.get<int>()});
    }
  }

  {
    std::set<std::string> seen;
    auto claim = [&](const std::string& id, const std::string& path) {
      if (id == kNoneToken) throw ParseError(path, "reserved id");
      if (!seen.insert(id).second) throw ParseError(path, "duplicate id " + id);
      inst.doctors.push_back(id);
      return inst.doctor_count() - 1;
    };
    const json& singles = field(doc, "singles");
    if (!singles.is_array()) throw ParseError("singles", "expected an array");
    for (size_t i = 0; i < singles.size(); ++i) {
      std::string path = "singles[" + std::to_string(i) + "]";
      inst.singles.push_back(claim(id_string(singles.at(i), path), path));
    }
    const json& couples = field(doc, "couples");
    if (!couples.is_array()) throw ParseError("couples", "expected an array");
    for (size_t i = 0; i < couples.size(); ++i) {
      std::string path = "couples[" + std::to_string(i) + "]";
      Couple c;
      c.f = claim(id_string(field(couples.at(i), "f"), path + ".f"), path + ".f");
      c.m = claim(id_string(field(couples.at(i), "m"), path + ".m"), path + ".m");
      inst.couples.push_back(c);
    }
  }

  const int H = inst.hospital_count();
  const int none_h = inst.none_hospital();

  {
    const json& prefs = field(doc, "doctor_prefs");
    if (!prefs.is_object()) throw ParseError("doctor_prefs", "expected an object");
    inst.doctor_prefs.resize(inst.doctor_count());
    std::vector<bool> covered(inst.doctor_count(), false);
    for (const auto& [id, arr] : prefs.items()) {
      std::string path = "doctor_prefs." + id;
      auto d = inst.doctor_by_id(id);
      if (!d) throw ParseError(path, "unknown doctor " + id);
      if (!arr.is_array()) throw ParseError(path, "expected an array");
      std::vector<int> order;
      std::set<int> seen;
      for (size_t i = 0; i < arr.size(); ++i) {
        std::string epath = path + "[" + std::to_string(i) + "]";
        int h = hospital_slot(inst, id_string(arr.at(i), epath), epath);
        if (!seen.insert(h).second) throw ParseError(epath, "repeated entry");
        order.push_back(h);
      }
      if (!seen.count(none_h)) order.push_back(none_h);
      if (static_cast<int>(order.size()) != H + 1)
        throw ParseError(path, "must rank every hospital");
      inst.doctor_prefs[*d] = Ranking(std::move(order), H + 1);
      covered[*d] = true;
    }
    for (int d = 0; d < inst.doctor_count(); ++d)
      if (!covered[d]) throw ParseError("doctor_prefs", "missing entry for " + inst.doctors[d]);
  }

  {
    const json& prefs = field(doc, "couple_prefs");
    if (!prefs.is_object()) throw ParseError("couple_prefs", "expected an object");
    inst.couple_prefs.resize(inst.couple_count());
    std::vector<bool> covered(inst.couple_count(), false);
    for (const auto& [key, arr] : prefs.items()) {
      std::string path = "couple_prefs." + key;
      int c = -1;
      try {
        c = std::stoi(key);
      } catch (...) {
        throw ParseError(path, "couple keys are indices");
      }
      if (c < 0 || c >= inst.couple_count()) throw ParseError(path, "no such couple");
      if (!arr.is_array()) throw ParseError(path, "expected an array of pairs");
      std::vector<int> order;
      std::set<int> seen;
      bool saw_none_pair = false;
      for (size_t i = 0; i < arr.size(); ++i) {
        std::string epath = path + "[" + std::to_string(i) + "]";
        const json& pair = arr.at(i);
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError(epath, "expected [h_f, h_m]");
        int hf = hospital_slot(inst, id_string(pair.at(0), epath), epath);
        int hm = hospital_slot(inst, id_string(pair.at(1), epath), epath);
        int code = pair_code(hf, hm, H);
        if (!seen.insert(code).second) throw ParseError(epath, "repeated pair");
        if (hf == none_h || hm == none_h) saw_none_pair = true;
        order.push_back(code);
      }
      if (!saw_none_pair) {
        // Unmatched-outcome pairs omitted: append them canonically.
        for (int code : canonical_none_pairs(inst.doctor_prefs[inst.couples[c].f],
                                             inst.doctor_prefs[inst.couples[c].m], H))
          if (seen.insert(code).second) order.push_back(code);
      }
      if (static_cast<int>(order.size()) != (H + 1) * (H + 1))
        throw ParseError(path, "must rank every hospital pair");
      inst.couple_prefs[c] = Ranking(std::move(order), (H + 1) * (H + 1));
      covered[c] = true;
    }
    for (int c = 0; c < inst.couple_count(); ++c)
      if (!covered[c])
        throw ParseError("couple_prefs", "missing entry for couple " + std::to_string(c));
  }

  {
    const json& prefs = field(doc, "hospital_prefs");
    if (!prefs.is_object()) throw ParseError("hospital_prefs", "expected an object");
    inst.hospital_prefs.resize(H);
    std::vector<bool> covered(H, false);
    const int none_d = inst.none_doctor();
    for (const auto& [id, body] : prefs.items()) {
      std::string path = "hospital_prefs." + id;
      auto h = inst.hospital_by_id(id);
      if (!h) throw ParseError(path, "unknown hospital " + id);
      HospitalPref hp;
      const json& individual = field(body, "individual");
      if (!individual.is_array()) throw ParseError(path + ".individual", "expected an array");
      std::vector<int> order;
      std::set<int> seen;
      for (size_t i = 0; i < individual.size(); ++i) {
        std::string epath = path + ".individual[" + std::to_string(i) + "]";
        std::string token = id_string(individual.at(i), epath);
        int d = none_d;
        if (token != kNoneToken) {
          auto found = inst.doctor_by_id(token);
          if (!found) throw ParseError(epath, "unknown doctor " + token);
          d = *found;
        }
        if (!seen.insert(d).second) throw ParseError(epath, "repeated entry");
        order.push_back(d);
      }
      if (!seen.count(none_d)) order.push_back(none_d);
      if (static_cast<int>(order.size()) != inst.doctor_count() + 1)
        throw ParseError(path + ".individual", "must rank every doctor");
      hp.individual = Ranking(std::move(order), inst.doctor_count() + 1);

      const json& ext = field(body, "set_extension");
      if (ext.is_string() && ext.get<std::string>() == "forced") {
        hp.extension = SetExtension::Forced;
      } else if (ext.is_string() && ext.get<std::string>() == "rank_lex") {
        hp.extension = SetExtension::RankLex;
      } else if (ext.is_object() && ext.contains("explicit")) {
        hp.extension = SetExtension::Explicit;
        const json& sets = ext.at("explicit");
        if (!sets.is_array()) throw ParseError(path + ".set_extension.explicit", "expected an array");
        for (size_t i = 0; i < sets.size(); ++i) {
          std::string epath = path + ".set_extension.explicit[" + std::to_string(i) + "]";
          if (!sets.at(i).is_array()) throw ParseError(epath, "expected an array of doctor ids");
          std::vector<int> set;
          for (const auto& entry : sets.at(i)) {
            auto found = inst.doctor_by_id(id_string(entry, epath));
            if (!found) throw ParseError(epath, "unknown doctor");
            set.push_back(*found);
          }
          std::sort(set.begin(), set.end());
          hp.explicit_order.push_back(std::move(set));
        }
      } else {
        throw ParseError(path + ".set_extension",
                         "expected \"forced\", \"rank_lex\" or {\"explicit\": [...]}");
      }
      inst.hospital_prefs[*h] = std::move(hp);
      covered[*h] = true;
    }
    for (int h = 0; h < H; ++h)
      if (!covered[h])
        throw ParseError("hospital_prefs", "missing entry for " + inst.hospitals[h].id);
  }

  return inst;
}

MarketInstance load_instance(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("", "cannot open " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const MarketInstance& inst) {
  ordered_json doc;
  const int none_h = inst.none_hospital();

  ordered_json couple_prefs = ordered_json::object();
  for (int c = 0; c < inst.couple_count(); ++c) {
    ordered_json pairs = ordered_json::array();
    const Ranking& cp = inst.couple_prefs[c];
    for (int p = 0; p < cp.size(); ++p) {
      auto [hf, hm] = pair_decode(cp.at(p), inst.hospital_count());
      auto token = [&](int h) {
        return h == none_h ? std::string(kNoneToken) : inst.hospitals[h].id;
      };
      pairs.push_back({token(hf), token(hm)});
    }
    couple_prefs[std::to_string(c)] = std::move(pairs);
  }
  doc["couple_prefs"] = std::move(couple_prefs);

  ordered_json couples = ordered_json::array();
  for (const Couple& c : inst.couples)
    couples.push_back({{"f", inst.doctors[c.f]}, {"m", inst.doctors[c.m]}});
  doc["couples"] = std::move(couples);

  ordered_json doctor_prefs = ordered_json::object();
  {
    std::vector<int> order(inst.doctor_count());
    for (int d = 0; d < inst.doctor_count(); ++d) order[d] = d;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return inst.doctors[a] < inst.doctors[b]; });
    for (int d : order) {
      ordered_json list = ordered_json::array();
      const Ranking& p = inst.doctor_prefs[d];
      for (int k = 0; k < p.size(); ++k)
        if (p.at(k) != none_h) list.push_back(inst.hospitals[p.at(k)].id);
      doctor_prefs[inst.doctors[d]] = std::move(list);
    }
  }
  doc["doctor_prefs"] = std::move(doctor_prefs);

  ordered_json hospitals = ordered_json::array();
  for (const Hospital& h : inst.hospitals)
    hospitals.push_back({{"id", h.id}, {"capacity", h.capacity}});
  doc["hospitals"] = std::move(hospitals);

  ordered_json hospital_prefs = ordered_json::object();
  {
    std::vector<int> order(inst.hospital_count());
    for (int h = 0; h < inst.hospital_count(); ++h) order[h] = h;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return inst.hospitals[a].id < inst.hospitals[b].id; });
    for (int h : order) {
      const HospitalPref& hp = inst.hospital_prefs[h];
      ordered_json body;
      ordered_json list = ordered_json::array();
      for (int k = 0; k < hp.individual.size(); ++k)
        if (hp.individual.at(k) != inst.none_doctor())
          list.push_back(inst.doctors[hp.individual.at(k)]);
      body["individual"] = std::move(list);
      switch (hp.extension) {
        case SetExtension::Forced: body["set_extension"] = "forced"; break;
        case SetExtension::RankLex: body["set_extension"] = "rank_lex"; break;
        case SetExtension::Explicit: {
          ordered_json sets = ordered_json::array();
          for (const auto& s : hp.explicit_order) {
            ordered_json one = ordered_json::array();
            for (int d : s) one.push_back(inst.doctors[d]);
            sets.push_back(std::move(one));
          }
          body["set_extension"] = ordered_json{{"explicit", std::move(sets)}};
          break;
        }
      }
      hospital_prefs[inst.hospitals[h].id] = std::move(body);
    }
  }
  doc["hospital_prefs"] = std::move(hospital_prefs);

  ordered_json singles = ordered_json::array();
  for (int s : inst.singles) singles.push_back(inst.doctors[s]);
  doc["singles"] = std::move(singles);

  return doc.dump(2) + "\n";
}

Matching parse_matching(const std::string& text, const MarketInstance& inst) {
  json doc = parse_text(text);
  if (!doc.is_object()) throw ParseError("", "expected an object doctor -> hospital");
  Matching mu(inst.doctor_count(), inst.none_hospital());
  std::vector<bool> covered(inst.doctor_count(), false);
  for (const auto& [id, v] : doc.items()) {
    auto d = inst.doctor_by_id(id);
    if (!d) throw ParseError(id, "unknown doctor " + id);
    mu.seat[*d] = hospital_slot(inst, id_string(v, id), id);
    covered[*d] = true;
  }
  for (int d = 0; d < inst.doctor_count(); ++d)
    if (!covered[d]) throw ParseError("", "missing assignment for " + inst.doctors[d]);
  if (!mu.respects_capacities(inst)) throw ParseError("", "matching exceeds a capacity");
  return mu;
}

Matching load_matching(const std::string& file, const MarketInstance& inst) {
  std::ifstream in(file);
  if (!in) throw ParseError("", "cannot open " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matching(buf.str(), inst);
}

nlohmann::ordered_json matching_to_json(const MarketInstance& inst, const Matching& mu) {
  std::vector<int> order(inst.doctor_count());
  for (int d = 0; d < inst.doctor_count(); ++d) order[d] = d;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return inst.doctors[a] < inst.doctors[b]; });
  ordered_json out = ordered_json::object();
  for (int d : order)
    out[inst.doctors[d]] = mu.of(d) == inst.none_hospital()
                               ? std::string(kNoneToken)
                               : inst.hospitals[mu.of(d)].id;
  return out;
}

std::string serialize_matching(const MarketInstance& inst, const Matching& mu) {
  return matching_to_json(inst, mu).dump(2) + "\n";
}

nlohmann::ordered_json validation_to_json(const ValidationReport& report) {
  ordered_json items = ordered_json::array();
  for (const ValidationIssue& i : report.issues)
    items.push_back({{"code", i.code}, {"message", i.message}, {"fatal", i.fatal}});
  return {{"ok", report.ok()}, {"issues", std::move(items)}};
}

namespace {

std::string hosp_token(const MarketInstance& inst, int h) {
  return h == inst.none_hospital() ? std::string(kNoneToken) : inst.hospitals.at(h).id;
}

ordered_json pair_json(const MarketInstance& inst, int code) {
  auto [hf, hm] = pair_decode(code, inst.hospital_count());
  return {hosp_token(inst, hf), hosp_token(inst, hm)};
}

ordered_json doctor_set_json(const MarketInstance& inst, const std::vector<int>& set) {
  ordered_json out = ordered_json::array();
  for (int d : set)
    out.push_back(d == inst.none_doctor() ? std::string(kNoneToken) : inst.doctors.at(d));
  return out;
}

}  // namespace

nlohmann::ordered_json verdict_to_json(const MarketInstance& inst,
                                       const AxiomVerdict& v) {
  ordered_json out;
  out["axiom"] = axiom_name(v.axiom);
  out["holds"] = v.holds;
  if (!v.witness) {
    out["witness"] = nullptr;
    return out;
  }
  ordered_json w;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ResponsiveWitness>) {
          w["clause"] = x.clause;
          if (x.hospital >= 0) w["hospital"] = inst.hospitals.at(x.hospital).id;
          w["base"] = doctor_set_json(inst, x.base);
          w["a"] = doctor_set_json(inst, x.a);
          w["b"] = doctor_set_json(inst, x.b);
        } else if constexpr (std::is_same_v<T, CpiWitness>) {
          w["hospitals"] = {inst.hospitals.at(x.hospital_a).id,
                            inst.hospitals.at(x.hospital_b).id};
          w["doctors"] = {inst.doctors.at(x.doctor_a), inst.doctors.at(x.doctor_b)};
        } else if constexpr (std::is_same_v<T, CoupleOrderWitness>) {
          w["couple"] = x.couple;
          w["preferred_pair"] = pair_json(inst, x.preferred_pair);
          w["other_pair"] = pair_json(inst, x.other_pair);
        } else if constexpr (std::is_same_v<T, RvtWitness>) {
          w["couple"] = x.couple;
          w["lifted_pair"] = pair_json(inst, x.lifted_pair);
          w["dominating_pair"] = pair_json(inst, x.dominating_pair);
        } else if constexpr (std::is_same_v<T, RfWitness>) {
          w["couple"] = x.couple;
          w["h"] = hosp_token(inst, x.h);
          w["h_prime"] = hosp_token(inst, x.h_prime);
        } else if constexpr (std::is_same_v<T, SrfWitness>) {
          w["couple"] = x.couple;
          w["h"] = hosp_token(inst, x.h);
          w["h_prime"] = hosp_token(inst, x.h_prime);
        } else if constexpr (std::is_same_v<T, ScpiWitness>) {
          w["couple"] = x.couple;
          w["clause"] = x.clause;
          w["doctors_between"] = x.doctors_between;
          w["doctors_above_m"] = x.doctors_above_m;
        } else if constexpr (std::is_same_v<T, CpcWitness>) {
          w["hospital"] = inst.hospitals.at(x.hospital).id;
          w["couple"] = x.couple;
        } else if constexpr (std::is_same_v<T, ScpcWitness>) {
          w["doctor"] = inst.doctors.at(x.doctor);
          w["couple"] = x.couple;
          w["hospital_above"] = inst.hospitals.at(x.hospital_above).id;
          w["hospital_below"] = inst.hospitals.at(x.hospital_below).id;
        }
      },
      *v.witness);
  out["witness"] = std::move(w);
  return out;
}

nlohmann::ordered_json witness_to_json(const MarketInstance& inst,
                                       const BlockingWitness& w) {
  ordered_json out;
  if (w.kind == BlockingWitness::Kind::Single) {
    out["kind"] = "single";
    out["hospital"] = hosp_token(inst, w.hospital_f);
    out["doctor"] = inst.doctors.at(w.doctor);
  } else {
    out["kind"] = "couple";
    out["couple"] = w.couple;
    out["h_f"] = hosp_token(inst, w.hospital_f);
    out["h_m"] = hosp_token(inst, w.hospital_m);
    switch (w.couple_case) {
      case BlockingWitness::CoupleCase::BothMove: out["case"] = "i"; break;
      case BlockingWitness::CoupleCase::OneAnchored: out["case"] = "ii"; break;
      case BlockingWitness::CoupleCase::SameHospital: out["case"] = "iii"; break;
    }
  }
  ordered_json evidence = ordered_json::array();
  for (const HospitalEvidence& e : w.evidence)
    evidence.push_back({{"hospital", hosp_token(inst, e.hospital)},
                        {"displaced", doctor_set_json(inst, e.displaced)},
                        {"status", e.forced ? "forced" : "by_canonical"}});
  out["evidence"] = std::move(evidence);
  return out;
}

nlohmann::ordered_json stability_to_json(const MarketInstance& inst,
                                         const StabilityVerdict& v) {
  ordered_json witnesses = ordered_json::array();
  for (const BlockingWitness& w : v.witnesses) witnesses.push_back(witness_to_json(inst, w));
  ordered_json undetermined = ordered_json::array();
  for (const BlockingWitness& w : v.undetermined)
    undetermined.push_back(witness_to_json(inst, w));
  return {{"status", status_name(v.status)},
          {"witnesses", std::move(witnesses)},
          {"undetermined", std::move(undetermined)}};
}

nlohmann::ordered_json solver_report_to_json(const MarketInstance& inst,
                                             const SolverReport& rep,
                                             bool include_stability) {
  ordered_json out;
  out["algorithm"] = rep.algorithm;
  out["refused"] = rep.refused;
  if (rep.refused) out["reason"] = rep.refusal_reason;
  ordered_json pre = ordered_json::array();
  for (const AxiomVerdict& v : rep.preconditions) pre.push_back(verdict_to_json(inst, v));
  out["preconditions"] = std::move(pre);
  out["matching"] = rep.matching ? matching_to_json(inst, *rep.matching) : ordered_json();
  if (include_stability && rep.stability)
    out["stability"] = stability_to_json(inst, *rep.stability);
  if (!rep.notes.empty()) out["notes"] = rep.notes;
  return out;
}

}  // namespace stablecouples
