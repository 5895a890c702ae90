#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "coarse/dynamics.hpp"

namespace coarse {

/// Largest base ground set whose power set we build (4096 hyper-points).
inline constexpr std::size_t kHyperCap = 12;

using SubsetMask = std::uint32_t;

/// Throws CapExceeded when base > cap, InvalidArgument when cap > kHyperCap.
void checkHyperCap(std::size_t base, std::size_t cap);

/// All subsets of the base in mask order, labelled "{}", "{a}", "{a,b}", ...
GroundSet hyperGround(const GroundSet& base, std::size_t cap = kHyperCap);

SubsetMask maskOf(const PointSet& s);
PointSet subsetOf(SubsetMask mask, std::size_t baseSize);

/// E* = {(K, L) : K in E[L] and L in E[K]} on the hyperground.
Relation expEntourage(const Relation& e, std::size_t cap = kHyperCap);

/// Chain of lifted elements. The lift of a normalized chain is normalized,
/// so the strict constructor doubles as the coarse-structure check.
CoarseSpace expSpace(const CoarseSpace& x, std::size_t cap = kHyperCap);

/// K -> f(K).
PointMap expMap(const PointMap& f, std::size_t cap = kHyperCap);

struct ExpPreservation {
  MapClasses base;
  MapClasses lifted;
  std::array<bool, 4> agrees{};  // bornologous, effectively proper, asymorphism, coarse equivalence
  bool holds() const { return agrees[0] && agrees[1] && agrees[2] && agrees[3]; }
};

ExpPreservation expPreservationCheck(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y,
                                     std::size_t cap = kHyperCap);

/// Same time group acting by exp phi^g on expSpace. Throws InvalidArgument if
/// sys itself is invalid and VerificationBug if the lift fails validateCDS.
SystemPtr liftCDS(const SystemPtr& sys, std::size_t cap = kHyperCap);

/// (exp f, h) between the lifts, re-verified. Throws VerificationBug on failure.
Conjugacy liftConjugacy(const Conjugacy& c, std::size_t cap = kHyperCap);

}  // namespace coarse
