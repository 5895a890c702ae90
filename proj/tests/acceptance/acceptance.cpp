// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status is nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coarse/asdim.hpp"
#include "coarse/cli/commands.hpp"
#include "coarse/cli/generator.hpp"
#include "coarse/hyperspace.hpp"
#include "support/oracle.hpp"

using namespace coarse;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note = what;
    pass = pass && ok;
  }
};

bool runCriterion(int id, const char* name, double limitSeconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limitSeconds > 0 && secs >= limitSeconds) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "took %.3f s, limit %.0f s", secs, limitSeconds);
    out.require(false, buf);
  }
  std::printf("%s criterion %d (%s) %.3f s%s%s\n", out.pass ? "PASS" : "FAIL", id, name, secs,
              out.note.empty() ? "" : ": ", out.note.c_str());
  std::fflush(stdout);
  return out.pass;
}

void relationOracle(Outcome& out) {
  std::mt19937_64 rng(1);
  const auto g = GroundSet::range(6);
  for (int trial = 0; trial < 500; ++trial) {
    auto e = oracle::randomRelation(g, rng, 0.1 + 0.1 * (trial % 6));
    auto f = oracle::randomRelation(g, rng, 0.1 + 0.1 * ((trial / 6) % 6));
    auto pe = oracle::toPairs(e), pf = oracle::toPairs(f);
    out.require(oracle::toPairs(compose(e, f)) == oracle::compose(pe, pf, 6), "compose");
    out.require(oracle::toPairs(inverse(e)) == oracle::inverse(pe), "inverse");
    for (std::size_t m = 0; m < 6; ++m) out.require(oracle::toPoints(ball(e, m)) == oracle::ball(pe, m), "ball");
    auto n = oracle::randomPoints(6, rng, 0.5);
    out.require(oracle::toPoints(image(e, n)) == oracle::image(pe, oracle::toPoints(n)), "image");
  }
}

bool controlAtMostNext(const ControlOutcome& c) {
  if (!hasControl(c)) return false;
  const auto& t = control(c);
  for (std::size_t i = 0; i < t.table.size(); ++i)
    if (t.table[i] > i + 1) return false;
  return t.isMonotone();
}

void unifiedDemoCriterion(Outcome& out) {
  auto d = unifiedDemo(1000, 0.25, {1, 2, 4, 8});
  out.require(d.floorAfterInclusionIsIdentity, "floor after inclusion is not the identity");
  out.require(!d.firstScaleContainingOne.isNone(), "no scale contains distance 1");
  out.require(!d.inverse.forthAndBack.isNone() && d.inverse.forthAndBack.index() <= d.firstScaleContainingOne.index(),
              "inclusion after floor is not close at the first scale containing 1");
  out.require(d.inclusionReport.classes.coarseEquivalence, "inclusion is not a coarse equivalence");
  out.require(d.floorReport.classes.coarseEquivalence, "floor is not a coarse equivalence");
  for (const auto* rep : {&d.inclusionReport, &d.floorReport}) {
    out.require(controlAtMostNext(rep->bornologous), "bornologous control exceeds i+1");
    out.require(controlAtMostNext(rep->effectivelyProper), "effectively proper control exceeds i+1");
  }
}

void groupRoundTrip(Outcome& out) {
  for (const auto& g : {FiniteGroup::cyclic(4), FiniteGroup::klein(), FiniteGroup::symmetric3()}) {
    std::vector<PointSet> subsets;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.size()); ++m) {
      if (__builtin_popcountll(m) > 4) continue;
      PointSet s(g.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        if (m >> i & 1U) s.insert(i);
      subsets.push_back(s);
    }
    // Normalization collapses many raw chains to one; check each result once.
    std::set<std::vector<PointSet>> seen;
    std::vector<PointSet> raw;
    auto visit = [&](auto&& self, std::size_t depth) -> void {
      if (depth > 0) {
        auto ideal = validateIdealChain(g, raw);
        if (seen.insert(ideal.sets()).second) {
          auto x = leftStructure(g, ideal);
          auto back = idealFromStructure(g, x);
          out.require(sameFiltration(leftStructure(g, back), x), "round trip changed the structure");
          out.require(inversionAsymorphismCheck(g, ideal).classes.asymorphism, "inversion is not an asymorphism");
        }
      }
      if (depth == 3) return;
      for (const auto& s : subsets) {
        raw.push_back(s);
        self(self, depth + 1);
        raw.pop_back();
      }
    };
    visit(visit, 0);
  }
}

void asdimInterval(Outcome& out) {
  auto window = [](std::size_t n, std::vector<double> scales) {
    std::vector<double> coords;
    for (std::size_t i = 0; i < n; ++i) coords.push_back(static_cast<double>(i));
    return fromLine(GroundSet::range(n), coords, scales);
  };
  auto w = window(1024, {2, 4, 8, 16});
  auto r = asdimUpperWitness(w, 1);
  out.require(r.ok(), "no witness on the long window");
  out.require(r.perScale.size() == w.scaleCount(), "missing scales");
  for (const auto& sc : r.perScale) {
    out.require(sc.cover.families.size() == 2 && coversGround(sc.cover, w.ground().size()), "not a 2-family cover");
    for (const auto& fam : sc.cover.families) out.require(separatedCheck(fam, w.at(sc.scale)), "family not separated");
    out.require(uniformBoundScale(sc.cover, w) == sc.boundScale, "bound scale mismatch");
    auto rs = w.radius(sc.scale);
    if (!rs) {
      // The appended closure has no strip width, so no template applies.
      out.require(sc.boundScale == Scale(sc.scale), "top scale bound beyond the top");
      continue;
    }
    out.require(sc.source == CoverSource::IntervalTemplate, "not a template cover");
    auto rb = sc.boundScale.isNone() ? std::nullopt : w.radius(sc.boundScale.index());
    out.require(rb && *rb <= 2 * *rs, "bound reach exceeds twice the separation");
  }
  auto small = window(16, {2, 4, 8, 16});
  out.require(!asdimExactSmall(small, 0, 1, 0), "a single separated family bounded by S4 exists");
}

std::string corpusReport() {
  cli::CommandOptions opt;
  opt.seed = 42;
  opt.count = 200;
  auto r = cli::runCommand("corpus", opt);
  return cli::renderJson(r, false);
}

void corpusCriterion(Outcome& out) {
  cli::CommandOptions opt;
  opt.seed = 42;
  opt.count = 200;
  auto r = cli::runCommand("corpus", opt);
  out.require(r.checks.size() == 200, "wrong instance count");
  bool sawSetValued = false, sawSingleton = false;
  for (const auto& c : r.checks) {
    out.require(c.pass, c.input + " failed: " + c.details.dump());
    out.require(c.details.at("points").get<std::size_t>() <= 8, c.input + " too many points");
    (c.details.at("setValued").get<bool>() ? sawSetValued : sawSingleton) = true;
  }
  out.require(sawSetValued && sawSingleton, "both operation modes must occur");
}

void hyperCriterion(Outcome& out) {
  std::mt19937_64 rng(6);
  std::vector<cli::GeneratedInstance> eligible;
  for (std::size_t i = 0; i < 200; ++i) {
    auto inst = cli::generateInstance(cli::instanceSeed(42, i));
    if (inst.a->ground().size() <= 6) eligible.push_back(std::move(inst));
  }
  out.require(!eligible.empty(), "no instance with at most 6 points");
  for (const auto& inst : eligible) {
    auto hx = expSpace(inst.a->space());
    out.require(!checkChain(hx.ground(), hx.chain()), "exp space is not a coarse structure");
    out.require(validateCDS(*liftCDS(inst.a)).ok(), "lifted system invalid");
    auto lc = liftConjugacy(*inst.ab);
    out.require(isConjugacy(checkConjugacy(lc.fromPtr(), lc.toPtr(), lc.f(), lc.h())), "lifted conjugacy");
  }
  for (std::size_t k = 0; k < 100 && !eligible.empty(); ++k) {
    const auto& inst = eligible[k % eligible.size()];
    const auto& x = inst.a->space();
    const auto& y = eligible[(k * 7 + 3) % eligible.size()].b->space();
    std::vector<std::size_t> to(x.ground().size());
    for (auto& t : to) t = rng() % y.ground().size();
    out.require(expPreservationCheck(PointMap(x.ground(), y.ground(), to), x, y).holds(),
                "biconditional broken on map " + std::to_string(k));
  }
}

void groupAsdim(Outcome& out) {
  for (const auto& g : {FiniteGroup::cyclic(4), FiniteGroup::klein(), FiniteGroup::cyclic(6)}) {
    auto rep = groupAsdimCheck(g, finitaryIdeal(g), 0);
    out.require(rep.ok(), "no n = 0 witness");
    out.require(rep.freeRank == std::optional<std::size_t>(0), "free rank is not 0");
  }
}

}  // namespace

int main() {
  bool all = true;
  all &= runCriterion(1, "relation algebra oracle", 1, relationOracle);
  all &= runCriterion(2, "unified Z/R demo", 2, unifiedDemoCriterion);
  all &= runCriterion(3, "coarse group round trip", 5, groupRoundTrip);
  all &= runCriterion(4, "asdim interval regime", 10, asdimInterval);
  all &= runCriterion(5, "theorem corpus", 30, corpusCriterion);
  all &= runCriterion(6, "hyperspace suite", 60, hyperCriterion);
  all &= runCriterion(7, "group asdim", 1, groupAsdim);
  all &= runCriterion(8, "determinism", 0, [](Outcome& out) {
    out.require(corpusReport() == corpusReport(), "reports differ");
  });
  std::printf("%s\n", all ? "all criteria passed" : "some criteria failed");
  return all ? 0 : 1;
}
