#include "coarse/dynamics.hpp"

namespace coarse {

namespace {

HyperTable singletonTable(const FiniteGroup& g) {
  HyperTable t(g.size(), std::vector<PointSet>(g.size(), PointSet(g.size())));
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) t[a][b].insert(g.op(a, b));
  return t;
}

void checkIdealFits(const FiniteGroup& g, const IdealChain& ideal) {
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    const PointSet& h = ideal.at(i);
    g.elements().checkSet(h);
    if (!h.contains(g.identity()) || g.inverseSet(h) != h || (i > 0 && !ideal.at(i - 1).isSubsetOf(h)))
      throw InvalidArgument("ideal chain does not belong to this group");
  }
  if (!g.isSubgroup(ideal.top())) throw InvalidArgument("ideal chain top is not a subgroup of this group");
}

CoarseSpace checkedLeftStructure(const FiniteGroup& g, const IdealChain& ideal) {
  checkIdealFits(g, ideal);
  return leftStructure(g, ideal);
}

// Index of point in n's subspace numbering.
std::vector<std::size_t> renumber(const PointSet& n) {
  std::vector<std::size_t> idx(n.size(), 0);
  std::size_t k = 0;
  n.forEach([&](std::size_t a) { idx[a] = k++; });
  return idx;
}

PointSet restrictSet(const PointSet& s, const PointSet& n, const std::vector<std::size_t>& idx) {
  PointSet out(n.count());
  (s & n).forEach([&](std::size_t a) { out.insert(idx[a]); });
  return out;
}

}  // namespace

TimeGroup::TimeGroup(FiniteGroup group, IdealChain ideal, std::optional<HyperTable> products)
    : group_(std::move(group)), ideal_(std::move(ideal)), space_(checkedLeftStructure(group_, ideal_)) {
  const std::size_t n = group_.size();
  HyperTable single = singletonTable(group_);
  if (!products) {
    products_ = std::move(single);
    return;
  }
  if (products->size() != n) throw InvalidArgument("set-valued table has the wrong number of rows");
  for (std::size_t a = 0; a < n; ++a) {
    if ((*products)[a].size() != n) throw InvalidArgument("set-valued table row has the wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      const PointSet& p = (*products)[a][b];
      group_.elements().checkSet(p);
      if (p.empty())
        throw InvalidArgument("set-valued product " + group_.elements().label(a) + " * " + group_.elements().label(b) +
                              " is empty");
      if (p != single[a][b]) setValued_ = true;
    }
  }
  const std::size_t e = group_.identity();
  for (std::size_t g = 0; g < n; ++g)
    if (!(*products)[e][g].contains(g) || !(*products)[g][e].contains(g))
      throw InvalidArgument("identity is not a unit of the set-valued operation at " + group_.elements().label(g));
  products_ = std::move(*products);
}

CoarseDynamicalSystem::CoarseDynamicalSystem(CoarseSpace space, TimeGroup time, std::vector<PointMap> evolution)
    : space_(std::move(space)), time_(std::move(time)), evolution_(std::move(evolution)) {
  if (space_.ground().empty()) throw InvalidArgument("a dynamical system needs a nonempty space");
  if (evolution_.size() != time_.size())
    throw InvalidArgument("evolution has " + std::to_string(evolution_.size()) + " maps for a group of order " +
                          std::to_string(time_.size()));
  for (const auto& phi : evolution_) {
    requireSameGround(phi.source(), space_.ground(), "evolution map");
    requireSameGround(phi.target(), space_.ground(), "evolution map");
  }
}

bool sameSystem(const CoarseDynamicalSystem& a, const CoarseDynamicalSystem& b) {
  if (&a == &b) return true;
  return a.ground().sameAs(b.ground()) && a.space().chain() == b.space().chain() &&
         a.time().elements().sameAs(b.time().elements()) && a.time().group().table() == b.time().group().table() &&
         a.time().ideal().sets() == b.time().ideal().sets() && a.time().products() == b.time().products() &&
         a.evolution() == b.evolution();
}

std::string CDSViolation::describe(const CoarseDynamicalSystem& sys) const {
  const auto& el = sys.time().elements();
  const auto& pt = sys.ground();
  switch (kind) {
    case Kind::Identity:
      return "phi^" + el.label(g1) + " moves '" + pt.label(point) + "' to '" + pt.label(sys.phi(g1)(point)) +
             "' but must be the identity";
    case Kind::NotAsymorphism:
      return "phi^" + el.label(g1) + " is not an asymorphism";
    case Kind::Composition: {
      std::size_t x = sys.phi(g1)(sys.phi(g2)(point));
      return "phi^" + el.label(g1) + " o phi^" + el.label(g2) + " sends '" + pt.label(point) + "' to '" + pt.label(x) +
             "', outside phi^(" + el.label(g1) + "*" + el.label(g2) + ")(" + pt.label(point) + ")";
    }
  }
  return {};
}

CDSReport validateCDS(const CoarseDynamicalSystem& sys) {
  CDSReport r;
  const auto& g = sys.time().group();
  const std::size_t n = sys.ground().size();
  const std::size_t e = g.identity();
  for (std::size_t m = 0; m < n; ++m) {
    if (sys.phi(e)(m) != m) {
      r.violation = CDSViolation{CDSViolation::Kind::Identity, e, e, m};
      return r;
    }
  }
  for (std::size_t a = 0; a < g.size(); ++a) {
    auto rep = classify(sys.phi(a), sys.space(), sys.space());
    if (!rep.classes.asymorphism) {
      r.violation = CDSViolation{CDSViolation::Kind::NotAsymorphism, a, a, 0};
      return r;
    }
    r.bornologous.push_back(control(rep.bornologous));
    r.effectivelyProper.push_back(control(rep.effectivelyProper));
  }
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) {
      const PointSet& prod = sys.time().product(a, b);
      for (std::size_t m = 0; m < n; ++m) {
        std::size_t x = sys.phi(a)(sys.phi(b)(m));
        bool found = false;
        prod.forEach([&](std::size_t s) { found = found || sys.phi(s)(m) == x; });
        if (!found) {
          r.violation = CDSViolation{CDSViolation::Kind::Composition, a, b, m};
          return r;
        }
      }
    }
  r.exactAction = true;
  for (std::size_t a = 0; a < g.size() && r.exactAction; ++a)
    for (std::size_t b = 0; b < g.size() && r.exactAction; ++b)
      r.exactAction = composeMaps(sys.phi(a), sys.phi(b)) == sys.phi(g.op(a, b));
  return r;
}

namespace {

PointSet orbitPoints(const CoarseDynamicalSystem& sys, std::size_t m) {
  sys.ground().checkIndex(m);
  PointSet out(sys.ground().size());
  for (const auto& phi : sys.evolution()) out.insert(phi(m));
  return out;
}

}  // namespace

Orbit orbit(const CoarseDynamicalSystem& sys, std::size_t m) {
  PointSet pts = orbitPoints(sys, m);
  CoarseSpace sub = subspace(sys.space(), pts);
  return Orbit{std::move(pts), std::move(sub)};
}

const char* toString(ConjugacyFailure::Clause c) {
  switch (c) {
    case ConjugacyFailure::Clause::SpaceAsymorphism: return "space-asymorphism";
    case ConjugacyFailure::Clause::TimeAsymorphism: return "time-asymorphism";
    case ConjugacyFailure::Clause::Homomorphism: return "homomorphism";
    case ConjugacyFailure::Clause::Intertwining: return "intertwining";
  }
  return "?";
}

ConjugacyOutcome checkConjugacy(SystemPtr a, SystemPtr b, PointMap f, PointMap h) {
  requireSameGround(f.source(), a->ground(), "conjugacy f");
  requireSameGround(f.target(), b->ground(), "conjugacy f");
  requireSameGround(h.source(), a->time().elements(), "conjugacy h");
  requireSameGround(h.target(), b->time().elements(), "conjugacy h");
  using Clause = ConjugacyFailure::Clause;

  MapReport fr = classify(f, a->space(), b->space());
  if (!fr.classes.asymorphism) return ConjugacyFailure{Clause::SpaceAsymorphism, 0, 0, 0, "f is not an asymorphism"};
  MapReport hr = classify(h, a->time().space(), b->time().space());
  if (!hr.classes.asymorphism)
    return ConjugacyFailure{Clause::TimeAsymorphism, 0, 0, 0, "h is not an asymorphism of the time groups"};

  const auto& ga = a->time().elements();
  for (std::size_t g1 = 0; g1 < ga.size(); ++g1)
    for (std::size_t g2 = 0; g2 < ga.size(); ++g2)
      if (h.image(a->time().product(g1, g2)) != b->time().product(h(g1), h(g2)))
        return ConjugacyFailure{Clause::Homomorphism, g1, g2, 0,
                                "h(" + ga.label(g1) + "*" + ga.label(g2) + ") differs from h(" + ga.label(g1) +
                                    ")*h(" + ga.label(g2) + ")"};

  for (std::size_t g = 0; g < ga.size(); ++g)
    for (std::size_t m = 0; m < a->ground().size(); ++m)
      if (f(a->phi(g)(m)) != b->phi(h(g))(f(m)))
        return ConjugacyFailure{Clause::Intertwining, g, g, m,
                                "f(phi^" + ga.label(g) + "(" + a->ground().label(m) + ")) differs from phi~^" +
                                    b->time().elements().label(h(g)) + "(f(" + a->ground().label(m) + "))"};

  return Conjugacy(std::move(a), std::move(b), std::move(f), std::move(h), std::move(fr), std::move(hr));
}

namespace {

Conjugacy mustVerify(ConjugacyOutcome o, const char* what) {
  if (auto fail = std::get_if<ConjugacyFailure>(&o))
    throw VerificationBug(std::string(what) + " failed re-verification at clause " + toString(fail->clause) + ": " +
                          fail->detail);
  return std::get<Conjugacy>(std::move(o));
}

}  // namespace

Conjugacy identityConjugacy(const SystemPtr& sys) {
  return mustVerify(checkConjugacy(sys, sys, PointMap::identity(sys->ground()), PointMap::identity(sys->time().elements())),
                    "identity conjugacy");
}

Conjugacy inverseConjugacy(const Conjugacy& c) {
  return mustVerify(checkConjugacy(c.toPtr(), c.fromPtr(), inverseMap(c.f()), inverseMap(c.h())), "inverse conjugacy");
}

Conjugacy composeConjugacy(const Conjugacy& c1, const Conjugacy& c2) {
  if (!sameSystem(c1.to(), c2.from()))
    throw InvalidArgument("composeConjugacy: the first conjugacy does not end where the second starts");
  return mustVerify(checkConjugacy(c1.fromPtr(), c2.toPtr(), composeMaps(c2.f(), c1.f()), composeMaps(c2.h(), c1.h())),
                    "composed conjugacy");
}

OrbitPreservation orbitPreservationCheck(const Conjugacy& c, std::size_t m) {
  return OrbitPreservation{c.f().image(orbitPoints(c.from(), m)), orbitPoints(c.to(), c.f()(m))};
}

TimeGroup coproductTimeGroup(const TimeGroup& a, const TimeGroup& b) {
  const std::size_t na = a.size(), nb = b.size();
  FiniteGroup p = FiniteGroup::directProduct(a.group(), b.group());
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y)
      labels.push_back("((1," + a.elements().label(x) + "),(2," + b.elements().label(y) + "))");
  FiniteGroup g(GroundSet(std::move(labels)), p.table());

  auto pairSet = [&](const PointSet& s, const PointSet& t) {
    PointSet out(na * nb);
    s.forEach([&](std::size_t x) { t.forEach([&](std::size_t y) { out.insert(x * nb + y); }); });
    return out;
  };
  std::vector<PointSet> raw;
  const std::size_t len = std::max(a.ideal().size(), b.ideal().size());
  for (std::size_t i = 0; i < len; ++i)
    raw.push_back(pairSet(a.ideal().at(std::min(i, a.ideal().size() - 1)), b.ideal().at(std::min(i, b.ideal().size() - 1))));

  std::optional<HyperTable> products;
  if (a.setValued() || b.setValued()) {
    products.emplace(na * nb, std::vector<PointSet>(na * nb, PointSet(na * nb)));
    for (std::size_t u = 0; u < na * nb; ++u)
      for (std::size_t v = 0; v < na * nb; ++v)
        (*products)[u][v] = pairSet(a.product(u / nb, v / nb), b.product(u % nb, v % nb));
  }
  IdealChain ideal = validateIdealChain(g, raw);
  return TimeGroup(std::move(g), std::move(ideal), std::move(products));
}

SystemPtr coproductCDS(const SystemPtr& a, const SystemPtr& b) {
  const std::size_t na = a->ground().size(), nb = b->ground().size();
  const std::size_t ta = a->time().size(), tb = b->time().size();
  CoarseSpace space = coproduct(a->space(), b->space());
  TimeGroup time = coproductTimeGroup(a->time(), b->time());
  std::vector<PointMap> evolution;
  for (std::size_t p = 0; p < ta * tb; ++p) {
    const PointMap& phi = a->phi(p / tb);
    const PointMap& psi = b->phi(p % tb);
    std::vector<std::size_t> to(na + nb);
    for (std::size_t i = 0; i < na; ++i) to[i] = phi(i);
    for (std::size_t j = 0; j < nb; ++j) to[na + j] = na + psi(j);
    evolution.emplace_back(space.ground(), space.ground(), std::move(to));
  }
  auto out = std::make_shared<const CoarseDynamicalSystem>(std::move(space), std::move(time), std::move(evolution));
  if (validateCDS(*a).ok() && validateCDS(*b).ok()) {
    auto r = validateCDS(*out);
    if (!r.ok()) throw VerificationBug("coproduct system fails validation: " + r.violation->describe(*out));
  }
  return out;
}

Conjugacy coproductConjugacy(const Conjugacy& c1, const Conjugacy& c2) {
  SystemPtr from = coproductCDS(c1.fromPtr(), c2.fromPtr());
  SystemPtr to = coproductCDS(c1.toPtr(), c2.toPtr());
  const std::size_t n1 = c1.from().ground().size(), n2 = c2.from().ground().size();
  const std::size_t m1 = c1.to().ground().size();
  std::vector<std::size_t> f(n1 + n2);
  for (std::size_t i = 0; i < n1; ++i) f[i] = c1.f()(i);
  for (std::size_t j = 0; j < n2; ++j) f[n1 + j] = m1 + c2.f()(j);
  const std::size_t t1 = c1.from().time().size(), t2 = c2.from().time().size();
  const std::size_t u2 = c2.to().time().size();
  std::vector<std::size_t> h(t1 * t2);
  for (std::size_t p = 0; p < t1 * t2; ++p) h[p] = c1.h()(p / t2) * u2 + c2.h()(p % t2);
  PointMap fm(from->ground(), to->ground(), std::move(f));
  PointMap hm(from->time().elements(), to->time().elements(), std::move(h));
  return mustVerify(checkConjugacy(from, to, std::move(fm), std::move(hm)), "coproduct conjugacy");
}

CoarseDynamicalSystem subCDS(const CoarseDynamicalSystem& sys, const PointSet& n, const PointSet& h) {
  const FiniteGroup& g = sys.time().group();
  sys.ground().checkSet(n);
  g.elements().checkSet(h);
  if (!g.isSubgroup(h)) throw InvalidArgument("subCDS: element set is not a subgroup");
  if (n.empty()) throw InvalidArgument("subCDS: point set is empty");
  for (std::size_t s : h.members())
    for (std::size_t m : n.members())
      if (!n.contains(sys.phi(s)(m)))
        throw NotInvariant("phi^" + g.elements().label(s) + " moves '" + sys.ground().label(m) + "' out of the subset", s,
                           m);

  const auto hidx = renumber(h);
  const auto helems = h.members();
  std::vector<std::vector<std::size_t>> table(helems.size(), std::vector<std::size_t>(helems.size()));
  for (std::size_t a = 0; a < helems.size(); ++a)
    for (std::size_t b = 0; b < helems.size(); ++b) table[a][b] = hidx[g.op(helems[a], helems[b])];
  FiniteGroup sub(GroundSet(g.elements().labelsOf(h)), std::move(table));

  std::vector<PointSet> raw;
  for (const auto& s : sys.time().ideal().sets()) raw.push_back(restrictSet(s, h, hidx));
  IdealChain ideal = validateIdealChain(sub, raw);

  std::optional<HyperTable> products;
  if (sys.time().setValued()) {
    products.emplace(helems.size(), std::vector<PointSet>(helems.size(), PointSet(helems.size())));
    for (std::size_t a = 0; a < helems.size(); ++a)
      for (std::size_t b = 0; b < helems.size(); ++b) {
        PointSet p = restrictSet(sys.time().product(helems[a], helems[b]), h, hidx);
        if (p.empty())
          throw InvalidArgument("subCDS: product " + sub.elements().label(a) + " * " + sub.elements().label(b) +
                                " has no element in the subgroup");
        (*products)[a][b] = std::move(p);
      }
  }

  CoarseSpace space = subspace(sys.space(), n);
  const auto nidx = renumber(n);
  std::vector<PointMap> evolution;
  for (std::size_t s : helems) {
    std::vector<std::size_t> to;
    n.forEach([&](std::size_t m) { to.push_back(nidx[sys.phi(s)(m)]); });
    evolution.emplace_back(space.ground(), space.ground(), std::move(to));
  }
  return CoarseDynamicalSystem(std::move(space), TimeGroup(std::move(sub), std::move(ideal), std::move(products)),
                               std::move(evolution));
}

}  // namespace coarse
