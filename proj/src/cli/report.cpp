#include "coarse/cli/report.hpp"

#include <algorithm>
#include <cstdio>

namespace coarse::cli {

bool Report::allPass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

void Report::sort() {
  std::stable_sort(checks.begin(), checks.end(), [](const CheckRecord& a, const CheckRecord& b) {
    return a.check != b.check ? a.check < b.check : a.input < b.input;
  });
}

Json toJson(const Report& r, bool timings) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json rec;
    rec["check"] = c.check;
    rec["input"] = c.input;
    rec["verdict"] = c.pass ? "PASS" : "FAIL";
    rec["details"] = c.details;
    if (timings) rec["wallMs"] = c.wallMs;
    checks.push_back(std::move(rec));
  }
  Json out;
  out["version"] = kReportVersion;
  out["seed"] = r.seed;
  out["checks"] = std::move(checks);
  return out;
}

std::string renderJson(const Report& r, bool timings) { return toJson(r, timings).dump(2) + "\n"; }

std::string renderText(const Report& r, bool timings) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& c : r.checks) {
    out += c.pass ? "PASS " : "FAIL ";
    out += c.check + " " + c.input;
    if (timings) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " (%.1f ms)", c.wallMs);
      out += buf;
    }
    if (!c.pass) out += " " + c.details.dump();
    out += "\n";
    passed += c.pass;
  }
  out += std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " checks passed\n";
  return out;
}

Json labelsJson(const GroundSet& g, const PointSet& s) { return g.labelsOf(s); }

Json pairJson(const GroundSet& a, const GroundSet& b, IndexPair p) {
  return Json::array({a.label(p.first), b.label(p.second)});
}

Json scaleJson(Scale s) {
  if (s.isNone()) return "NONE";
  return s.index();
}

Json controlJson(const ControlOutcome& c, const PointMap& f) {
  if (hasControl(c)) return Json{{"table", control(c).table}};
  const auto& w = std::get<ControlFailure>(c);
  return Json{{"failedScale", w.scale},
              {"sourcePair", pairJson(f.source(), f.source(), w.sourcePair)},
              {"targetPair", pairJson(f.target(), f.target(), w.targetPair)}};
}

Json mapReportJson(const MapReport& r, const PointMap& f) {
  Json out;
  out["bornologous"] = r.classes.bornologous;
  out["effectivelyProper"] = r.classes.effectivelyProper;
  out["asymorphism"] = r.classes.asymorphism;
  out["asymorphicEmbedding"] = r.classes.asymorphicEmbedding;
  out["coarseEquivalence"] = r.classes.coarseEquivalence;
  out["bornologousControl"] = controlJson(r.bornologous, f);
  out["effectivelyProperControl"] = controlJson(r.effectivelyProper, f);
  out["largeImageScale"] = scaleJson(r.largeImageScale);
  if (r.closeScaleToIdentity) out["closeScaleToIdentity"] = scaleJson(*r.closeScaleToIdentity);
  return out;
}

Json cdsReportJson(const CDSReport& r, const CoarseDynamicalSystem& sys) {
  Json out;
  out["points"] = sys.ground().size();
  out["groupOrder"] = sys.time().size();
  out["setValued"] = sys.time().setValued();
  out["exactAction"] = r.exactAction;
  if (r.violation) {
    static const char* kinds[] = {"identity", "not-asymorphism", "composition"};
    const auto& v = *r.violation;
    out["violation"] = Json{{"kind", kinds[static_cast<int>(v.kind)]},
                            {"g1", sys.time().elements().label(v.g1)},
                            {"g2", sys.time().elements().label(v.g2)},
                            {"point", sys.ground().label(v.point)},
                            {"message", v.describe(sys)}};
  }
  return out;
}

Json conjugacyFailureJson(const ConjugacyFailure& f) {
  return Json{{"clause", toString(f.clause)}, {"g1", f.g1}, {"g2", f.g2}, {"point", f.point}, {"detail", f.detail}};
}

Json asdimJson(const AsdimResult& r, const CoarseSpace& x) {
  Json out;
  out["n"] = r.n;
  out["verdict"] = toString(r.verdict);
  if (r.failedScale) out["failedScale"] = *r.failedScale;
  Json scales = Json::array();
  for (const auto& sc : r.perScale) {
    Json fams = Json::array();
    for (const auto& fam : sc.cover.families) {
      Json sets = Json::array();
      for (const auto& s : fam) sets.push_back(labelsJson(x.ground(), s));
      fams.push_back(std::move(sets));
    }
    Json entry{{"scale", sc.scale}, {"boundScale", scaleJson(sc.boundScale)}, {"source", toString(sc.source)}};
    if (auto r0 = x.radius(sc.scale)) entry["separationRadius"] = *r0;
    if (!sc.boundScale.isNone())
      if (auto rb = x.radius(sc.boundScale.index())) entry["boundRadius"] = *rb;
    entry["families"] = std::move(fams);
    scales.push_back(std::move(entry));
  }
  out["perScale"] = std::move(scales);
  return out;
}

}  // namespace coarse::cli
