#include "coarse/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <thread>

#include "coarse/asdim.hpp"
#include "coarse/cli/generator.hpp"

namespace coarse::cli {

const std::vector<std::string>& commandNames() {
  static const std::vector<std::string> names{"check-space", "check-map", "check-group", "check-cds",
                                              "conjugacy",   "orbit",     "coproduct",   "hyperlift",
                                              "asdim",       "zr-demo",   "corpus"};
  return names;
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs body and stamps the elapsed time. Library errors become FAIL records.
CheckRecord timed(std::string check, std::string input, const std::function<void(CheckRecord&)>& body) {
  CheckRecord rec{std::move(check), std::move(input), false, Json::object(), 0};
  auto t0 = Clock::now();
  try {
    body(rec);
  } catch (const std::exception& e) {
    rec.pass = false;
    rec.details["error"] = e.what();
  }
  rec.wallMs = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return rec;
}

std::size_t workerCount(std::size_t requested, std::size_t jobs) {
  std::size_t hw = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(hw, jobs));
}

// Fills out[i] = job(i) on a small pool; the output order is the index order.
void parallelFor(std::size_t jobs, std::size_t threads, const std::function<void(std::size_t)>& job) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) job(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workerCount(threads, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

Scenario requireScenario(const CommandOptions& opt, const std::string& command) {
  if (!opt.scenario) throw UsageError(command + " requires --scenario FILE");
  return loadScenario(*opt.scenario);
}

// A named ground that is either a space or a group's element set.
const CoarseSpace* spaceFor(const Scenario& s, const std::string& name, std::optional<CoarseSpace>& holder) {
  if (s.spaces.count(name)) return &s.space(name);
  const auto& g = s.groups.at(name);
  holder = leftStructure(g.group, g.ideal);
  return &*holder;
}

void checkSpaces(const Scenario& s, Report& r) {
  for (const auto& [name, e] : s.spaces)
    r.checks.push_back(timed("check-space", name, [&](CheckRecord& rec) {
      rec.details["kind"] = e.kind;
      rec.details["points"] = e.ground.size();
      if (!e.space) {
        rec.details["violation"] = e.violation->describe(e.ground);
        return;
      }
      const auto& x = *e.space;
      rec.details["scales"] = x.scaleCount();
      rec.details["provenance"] = toString(x.provenance());
      Json radii = Json::array();
      for (std::size_t i = 0; i < x.scaleCount(); ++i) {
        auto rad = x.radius(i);
        radii.push_back(rad ? Json(*rad) : Json("closure"));
      }
      if (x.geometry()) rec.details["radii"] = radii;
      auto v = checkChain(x.ground(), x.chain());
      if (v) rec.details["violation"] = v->describe(x.ground());
      rec.pass = !v;
    }));
}

void checkMaps(const Scenario& s, Report& r) {
  for (const auto& [name, e] : s.maps)
    r.checks.push_back(timed("check-map", name, [&](CheckRecord& rec) {
      std::optional<CoarseSpace> hx, hy;
      const CoarseSpace& x = *spaceFor(s, e.from, hx);
      const CoarseSpace& y = *spaceFor(s, e.to, hy);
      auto rep = classify(e.map, x, y);
      rec.details = mapReportJson(rep, e.map);
      // The inverse-based and control-based readings must agree.
      bool agree = isAsymorphismByInverse(e.map, x, y) == isAsymorphismByControls(e.map, x, y) &&
                   isAsymorphicEmbeddingByRestriction(e.map, x, y) == isAsymorphicEmbeddingByControls(e.map, x, y) &&
                   isCoarseEquivalenceByInverse(e.map, x, y) == isCoarseEquivalenceByControls(e.map, x, y);
      rec.details["definitionsAgree"] = agree;
      rec.pass = agree && rep.classes.bornologous;
    }));
}

void checkGroups(const Scenario& s, Report& r) {
  for (const auto& [name, e] : s.groups)
    r.checks.push_back(timed("check-group", name, [&](CheckRecord& rec) {
      const auto& g = e.group;
      Json ideal = Json::array();
      for (const auto& h : e.ideal.sets()) ideal.push_back(labelsJson(g.elements(), h));
      rec.details["order"] = g.size();
      rec.details["abelian"] = g.isAbelian();
      rec.details["ideal"] = ideal;
      auto left = leftStructure(g, e.ideal);
      auto shift = leftCoarseGroupCheck(g, left);
      bool shiftOk = std::holds_alternative<ControlFunction>(shift);
      if (shiftOk) {
        rec.details["shiftControl"] = std::get<ControlFunction>(shift).table;
      } else {
        const auto& f = std::get<ShiftFailure>(shift);
        rec.details["shiftFailure"] = Json{{"scale", f.scale},
                                           {"shift", g.elements().label(f.shift)},
                                           {"pair", pairJson(g.elements(), g.elements(), f.pair)}};
      }
      auto back = idealFromStructure(g, left);
      bool roundTrip = sameFiltration(leftStructure(g, back), left);
      auto inv = inversionAsymorphismCheck(g, e.ideal);
      rec.details["roundTrip"] = roundTrip;
      rec.details["inversionAsymorphism"] = inv.classes.asymorphism;
      rec.pass = shiftOk && roundTrip && inv.classes.asymorphism;
    }));
}

void checkSystems(const Scenario& s, Report& r) {
  for (const auto& [name, e] : s.systems)
    r.checks.push_back(timed("check-cds", name, [&](CheckRecord& rec) {
      auto rep = validateCDS(*e.system);
      rec.details = cdsReportJson(rep, *e.system);
      rec.details["space"] = e.space;
      rec.details["group"] = e.group;
      rec.pass = rep.ok();
    }));
}

void checkConjugacies(const Scenario& s, Report& r) {
  for (const auto& [name, e] : s.conjugacies)
    r.checks.push_back(timed("conjugacy", name, [&](CheckRecord& rec) {
      const auto& a = s.system(e.fromSystem).system;
      const auto& b = s.system(e.toSystem).system;
      auto out = checkConjugacy(a, b, e.f, e.h);
      rec.details["from"] = e.fromSystem;
      rec.details["to"] = e.toSystem;
      if (auto* fail = std::get_if<ConjugacyFailure>(&out)) {
        rec.details["failure"] = conjugacyFailureJson(*fail);
        return;
      }
      const auto& c = std::get<Conjugacy>(out);
      inverseConjugacy(c);
      bool orbits = true;
      for (std::size_t m = 0; m < a->ground().size(); ++m) orbits = orbits && orbitPreservationCheck(c, m).holds();
      rec.details["inverseVerified"] = true;
      rec.details["orbitsPreserved"] = orbits;
      rec.pass = orbits;
    }));
}

void checkOrbits(const Scenario& s, Report& r) {
  for (const auto& [name, e] : s.systems)
    r.checks.push_back(timed("orbit", name, [&](CheckRecord& rec) {
      const auto& sys = *e.system;
      Json orbits = Json::object();
      bool invariant = true;
      for (std::size_t m = 0; m < sys.ground().size(); ++m) {
        auto o = orbit(sys, m);
        orbits[sys.ground().label(m)] = labelsJson(sys.ground(), o.points);
        for (const auto& phi : sys.evolution()) invariant = invariant && phi.image(o.points).isSubsetOf(o.points);
      }
      rec.details["orbits"] = orbits;
      rec.details["invariant"] = invariant;
      rec.pass = invariant;
    }));
}

void checkCoproducts(const Scenario& s, Report& r) {
  for (auto i = s.systems.begin(); i != s.systems.end(); ++i)
    for (auto j = i; j != s.systems.end(); ++j)
      r.checks.push_back(timed("coproduct", i->first + "+" + j->first, [&](CheckRecord& rec) {
        auto sys = coproductCDS(i->second.system, j->second.system);
        auto rep = validateCDS(*sys);
        rec.details = cdsReportJson(rep, *sys);
        rec.pass = rep.ok();
      }));
  for (auto i = s.conjugacies.begin(); i != s.conjugacies.end(); ++i)
    for (auto j = i; j != s.conjugacies.end(); ++j)
      r.checks.push_back(timed("coproduct-conjugacy", i->first + "+" + j->first, [&](CheckRecord& rec) {
        auto verify = [&](const ConjugacyEntry& e) {
          auto out = checkConjugacy(s.system(e.fromSystem).system, s.system(e.toSystem).system, e.f, e.h);
          if (auto* fail = std::get_if<ConjugacyFailure>(&out)) {
            rec.details["inputFailure"] = conjugacyFailureJson(*fail);
            return std::optional<Conjugacy>();
          }
          return std::optional<Conjugacy>(std::get<Conjugacy>(std::move(out)));
        };
        auto c1 = verify(i->second);
        auto c2 = verify(j->second);
        if (!c1 || !c2) return;
        auto c = coproductConjugacy(*c1, *c2);
        rec.details["points"] = c.from().ground().size();
        rec.pass = true;
      }));
}

void checkHyper(const Scenario& s, const CommandOptions& opt, Report& r) {
  for (const auto& [name, e] : s.systems)
    r.checks.push_back(timed("hyperlift", name, [&](CheckRecord& rec) {
      auto lifted = liftCDS(e.system, opt.hyperCap);
      auto rep = validateCDS(*lifted);
      rec.details = cdsReportJson(rep, *lifted);
      rec.pass = rep.ok();
    }));
  for (const auto& [name, e] : s.conjugacies)
    r.checks.push_back(timed("hyperlift-conjugacy", name, [&](CheckRecord& rec) {
      auto out = checkConjugacy(s.system(e.fromSystem).system, s.system(e.toSystem).system, e.f, e.h);
      if (auto* fail = std::get_if<ConjugacyFailure>(&out)) {
        rec.details["inputFailure"] = conjugacyFailureJson(*fail);
        return;
      }
      auto lc = liftConjugacy(std::get<Conjugacy>(out), opt.hyperCap);
      rec.details["points"] = lc.from().ground().size();
      rec.pass = true;
    }));
  for (const auto& [name, e] : s.maps)
    r.checks.push_back(timed("exp-preservation", name, [&](CheckRecord& rec) {
      std::optional<CoarseSpace> hx, hy;
      auto p = expPreservationCheck(e.map, *spaceFor(s, e.from, hx), *spaceFor(s, e.to, hy), opt.hyperCap);
      const char* names[] = {"bornologous", "effectivelyProper", "asymorphism", "coarseEquivalence"};
      const bool base[] = {p.base.bornologous, p.base.effectivelyProper, p.base.asymorphism, p.base.coarseEquivalence};
      const bool lift[] = {p.lifted.bornologous, p.lifted.effectivelyProper, p.lifted.asymorphism,
                           p.lifted.coarseEquivalence};
      for (int k = 0; k < 4; ++k) rec.details[names[k]] = Json{{"base", base[k]}, {"lifted", lift[k]}};
      rec.pass = p.holds();
    }));
}

void checkAsdim(const Scenario& s, const CommandOptions& opt, Report& r) {
  if (!opt.space) throw UsageError("asdim requires --space NAME");
  if (!opt.n) throw UsageError("asdim requires --n K");
  const CoarseSpace& x = s.space(*opt.space);
  r.checks.push_back(timed("asdim", *opt.space, [&](CheckRecord& rec) {
    AsdimOptions ao;
    ao.exactCap = opt.exactCap;
    auto res = asdimUpperWitness(x, *opt.n, ao);
    rec.details = asdimJson(res, x);
    rec.pass = res.ok();
  }));
}

Json controlsJson(const MapReport& rep, const PointMap& f) { return mapReportJson(rep, f); }

void zrDemo(const CommandOptions& opt, Report& r) {
  if (!opt.halfWidth) throw UsageError("zr-demo requires --half-width N");
  if (!opt.step) throw UsageError("zr-demo requires --step D");
  char input[64];
  std::snprintf(input, sizeof input, "N=%s,step=%s", formatNumber(*opt.halfWidth).c_str(),
                formatNumber(*opt.step).c_str());
  r.checks.push_back(timed("zr-demo", input, [&](CheckRecord& rec) {
    auto d = unifiedDemo(*opt.halfWidth, *opt.step, opt.scales);
    rec.details["integerPoints"] = d.integers.values.size();
    rec.details["gridPoints"] = d.grid.values.size();
    rec.details["floorAfterInclusionIsIdentity"] = d.floorAfterInclusionIsIdentity;
    rec.details["inclusionAfterFloorCloseness"] = scaleJson(d.inverse.forthAndBack);
    rec.details["floorAfterInclusionCloseness"] = scaleJson(d.inverse.backAndForth);
    rec.details["firstScaleContainingOne"] = scaleJson(d.firstScaleContainingOne);
    rec.details["inclusion"] = controlsJson(d.inclusionReport, d.inclusion);
    rec.details["floor"] = controlsJson(d.floorReport, d.floor);
    rec.pass = d.ok();
  }));
}

std::string instanceName(std::size_t index, std::size_t count) {
  std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string digits = std::to_string(index);
  return "instance-" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

}  // namespace

CheckRecord corpusInstance(std::uint64_t corpusSeed, std::size_t index, std::size_t count, std::size_t hyperCap) {
  return timed("corpus", instanceName(index, count), [&](CheckRecord& rec) {
    const std::uint64_t seed = instanceSeed(corpusSeed, index);
    rec.details["instanceSeed"] = seed;
    rec.details["reproduce"] = "coarse-dyn corpus --seed " + std::to_string(corpusSeed) + " --count " +
                               std::to_string(count) + " --instance " + std::to_string(index);
    auto inst = generateInstance(seed);
    const auto& a = inst.a;
    rec.details["group"] = inst.groupName;
    rec.details["points"] = a->ground().size();
    rec.details["scales"] = a->space().scaleCount();
    rec.details["setValued"] = inst.setValued;
    Json parts = Json::object();
    bool all = true;
    auto part = [&](const char* key, const std::function<bool()>& f) {
      bool ok = false;
      try {
        ok = f();
      } catch (const std::exception& e) {
        parts[std::string(key) + "Error"] = e.what();
      }
      parts[key] = ok ? "PASS" : "FAIL";
      all = all && ok;
    };
    const Conjugacy& ab = *inst.ab;
    const Conjugacy& bc = *inst.bc;

    part("systemsValid", [&] {
      return validateCDS(*a).ok() && validateCDS(*inst.b).ok() && validateCDS(*inst.c).ok();
    });
    part("generatedConjugacies", [&] {
      return isConjugacy(checkConjugacy(a, inst.b, ab.f(), ab.h())) &&
             isConjugacy(checkConjugacy(inst.b, inst.c, bc.f(), bc.h()));
    });
    part("reflexive", [&] {
      identityConjugacy(a);
      return true;
    });
    part("symmetric", [&] {
      auto inv = inverseConjugacy(ab);
      auto back = inverseConjugacy(inv);
      return back.f() == ab.f() && back.h() == ab.h();
    });
    part("transitive", [&] {
      auto ac = composeConjugacy(ab, bc);
      return isConjugacy(checkConjugacy(a, inst.c, ac.f(), ac.h()));
    });
    part("orbitPreservation", [&] {
      for (std::size_t m = 0; m < a->ground().size(); ++m)
        if (!orbitPreservationCheck(ab, m).holds() || !orbitPreservationCheck(inverseConjugacy(ab), ab.f()(m)).holds())
          return false;
      return true;
    });
    part("coproduct", [&] { return validateCDS(*coproductCDS(a, inst.b)).ok(); });
    part("coproductConjugacy", [&] {
      auto c = coproductConjugacy(ab, bc);
      return isConjugacy(checkConjugacy(c.fromPtr(), c.toPtr(), c.f(), c.h()));
    });

    const std::size_t limit = std::min(kCorpusHyperLimit, hyperCap);
    rec.details["hyperSuite"] = a->ground().size() <= limit;
    if (a->ground().size() <= limit) {
      part("expSpace", [&] {
        auto hx = expSpace(a->space(), hyperCap);
        return !checkChain(hx.ground(), hx.chain());
      });
      std::mt19937_64 rng(seed ^ 0xE3A5ULL);
      std::size_t maps = 0;
      part("expPreservation", [&] {
        const auto& x = a->space();
        const auto& y = inst.b->space();
        for (std::size_t k = 0; k < kCorpusExpMaps; ++k) {
          std::vector<std::size_t> to(x.ground().size());
          for (auto& t : to) t = rng() % y.ground().size();
          ++maps;
          if (!expPreservationCheck(PointMap(x.ground(), y.ground(), to), x, y, hyperCap).holds()) return false;
        }
        return true;
      });
      rec.details["expMaps"] = maps;
      part("liftCDS", [&] { return validateCDS(*liftCDS(a, hyperCap)).ok(); });
      part("liftConjugacy", [&] {
        liftConjugacy(ab, hyperCap);
        return true;
      });
    }
    rec.details["parts"] = parts;
    rec.pass = all;
  });
}

namespace {

void corpus(const CommandOptions& opt, Report& r) {
  if (!opt.count) throw UsageError("corpus requires --count N");
  const std::uint64_t seed = opt.seed.value_or(0);
  const std::size_t count = *opt.count;
  if (opt.instance) {
    if (*opt.instance >= count) throw UsageError("--instance must be below --count");
    r.checks.push_back(corpusInstance(seed, *opt.instance, count, opt.hyperCap));
    return;
  }
  std::vector<CheckRecord> out(count);
  parallelFor(count, opt.threads, [&](std::size_t i) { out[i] = corpusInstance(seed, i, count, opt.hyperCap); });
  for (auto& rec : out) r.checks.push_back(std::move(rec));
}

}  // namespace

Report runCommand(const std::string& command, const CommandOptions& opt) {
  const auto& names = commandNames();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw UsageError("unknown command '" + command + "'");
  if (opt.hyperCap > kHyperCap)
    throw UsageError("--hyper-cap can only lower the limit of " + std::to_string(kHyperCap));

  Report r;
  if (command == "zr-demo") {
    r.seed = opt.seed.value_or(0);
    zrDemo(opt, r);
  } else if (command == "corpus") {
    r.seed = opt.seed.value_or(0);
    corpus(opt, r);
  } else {
    Scenario s = requireScenario(opt, command);
    r.seed = opt.seed.value_or(s.seed);
    if (command == "check-space") checkSpaces(s, r);
    else if (command == "check-map") checkMaps(s, r);
    else if (command == "check-group") checkGroups(s, r);
    else if (command == "check-cds") checkSystems(s, r);
    else if (command == "conjugacy") checkConjugacies(s, r);
    else if (command == "orbit") checkOrbits(s, r);
    else if (command == "coproduct") checkCoproducts(s, r);
    else if (command == "hyperlift") checkHyper(s, opt, r);
    else if (command == "asdim") checkAsdim(s, opt, r);
  }
  r.sort();
  return r;
}

}  // namespace coarse::cli
