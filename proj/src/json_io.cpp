#include "factorlat/json_io.hpp"

#include <limits>

#include "factorlat/errors.hpp"

namespace factorlat {

namespace {

int64_t to_i64(const BigInt& b) {
  if (b > std::numeric_limits<int64_t>::max() || b < std::numeric_limits<int64_t>::min())
    fail(ErrorKind::TooLarge, "value does not fit in a JSON integer");
  return static_cast<int64_t>(b);
}

Json rat_to_json(const Rat& r) {
  return Json::array({to_i64(boost::multiprecision::numerator(r)),
                      to_i64(boost::multiprecision::denominator(r))});
}

Rat rat_from_json(const Json& j) {
  return Rat(j.at(0).get<int64_t>(), j.at(1).get<int64_t>());
}

}  // namespace

Json to_json(const AbelianGroup& g) { return Json(g.factors); }

Json to_json(const GroupElement& e) { return Json(e.c); }

Json to_json(const QuadForm& f) { return Json::array({f.a, f.b, f.c}); }

QuadForm form_from_json(const Json& j) {
  return QuadForm{j.at(0).get<int64_t>(), j.at(1).get<int64_t>(), j.at(2).get<int64_t>()};
}

Json knumber_to_json(const KNumber& x) {
  Json j;
  j["u"] = rat_to_json(x.u);
  j["v"] = rat_to_json(x.v);
  return j;
}

KNumber knumber_from_json(const Json& j) {
  return KNumber{rat_from_json(j.at("u")), rat_from_json(j.at("v"))};
}

Json graded_to_json(const GradedNumber& x) {
  Json j = knumber_to_json(x.gamma);
  j["d"] = x.d;
  return j;
}

Json sequence_to_json(const ClassSequence& s) {
  Json j;
  j["group"] = to_json(s.group);
  Json entries = Json::array();
  for (auto& e : s.entries) {
    Json je;
    je["id"] = e.id;
    je["class"] = to_json(e.cls);
    je["mult"] = e.mult;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

ClassSequence sequence_from_json(const Json& j) {
  AbelianGroup g{j.at("group").get<std::vector<int64_t>>()};
  std::vector<SequenceEntry> entries;
  for (auto& je : j.at("entries")) {
    entries.push_back(SequenceEntry{je.at("id").get<std::string>(),
                                    GroupElement{je.at("class").get<std::vector<int64_t>>()},
                                    je.at("mult").get<int>()});
  }
  return make_sequence(g, std::move(entries));
}

Json classgroup_to_json(const FormClassGroup& cg) {
  Json j;
  j["disc"] = cg.disc.value;
  j["radicand"] = cg.disc.radicand;
  Json forms = Json::array();
  Json classes = Json::array();
  for (auto& f : cg.reduced) {
    forms.push_back(to_json(f));
    classes.push_back(to_json(cg.class_of.at(f)));
  }
  j["forms"] = std::move(forms);
  j["group"] = to_json(cg.group);
  j["classes"] = std::move(classes);
  Json amb = Json::array();
  for (auto& [cls, f] : cg.ambiguous) {
    Json ja;
    ja["class"] = to_json(cls);
    ja["form"] = to_json(f);
    amb.push_back(std::move(ja));
  }
  j["ambiguous"] = std::move(amb);
  return j;
}

FormClassGroup classgroup_from_json(const Json& j) {
  FormClassGroup cg;
  cg.disc = Discriminant{j.at("disc").get<int64_t>(), j.at("radicand").get<int64_t>()};
  cg.group = AbelianGroup{j.at("group").get<std::vector<int64_t>>()};
  const Json& forms = j.at("forms");
  const Json& classes = j.at("classes");
  if (forms.size() != classes.size()) fail(ErrorKind::Io, "forms/classes size mismatch in cache");
  for (size_t i = 0; i < forms.size(); ++i) {
    QuadForm f = form_from_json(forms[i]);
    cg.reduced.push_back(f);
    cg.class_of[f] = GroupElement{classes[i].get<std::vector<int64_t>>()};
  }
  for (auto& ja : j.at("ambiguous")) {
    cg.ambiguous[GroupElement{ja.at("class").get<std::vector<int64_t>>()}] = form_from_json(ja.at("form"));
  }
  return cg;
}

Json report_to_json(const FactorizationReport& r) {
  Json j;
  j["n"] = r.n;
  j["disc"] = r.disc;
  j["eta"] = r.eta;
  j["lengths"] = Json(std::vector<int>(r.lengths.begin(), r.lengths.end()));
  Json parts = Json::array();
  for (auto& partition : r.partitions) {
    Json jp = Json::array();
    for (auto& b : partition) jp.push_back(Json(block_ids(r.sequence, b)));
    parts.push_back(std::move(jp));
  }
  j["partitions"] = std::move(parts);
  Json expl = Json::array();
  for (auto& factors : r.explicit_factors) {
    Json jf = Json::array();
    for (auto& x : factors) jf.push_back(knumber_to_json(x));
    expl.push_back(std::move(jf));
  }
  j["explicit"] = std::move(expl);
  j["mode"] = r.mode == ReportMode::Explicit ? "explicit" : "symbolic";
  return j;
}

}  // namespace factorlat
