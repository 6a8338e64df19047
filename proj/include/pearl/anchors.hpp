#pragma once

// Registry of citation anchors attached to verdicts in reports. Each anchor
// names the rule or identity a verdict relies on; reports must carry at
// least one anchor per verdict line.

#include <map>
#include <string>

namespace pearl {

inline const std::map<std::string, std::string>& anchor_registry() {
  static const std::map<std::string, std::string> reg = {
      {"PrimePowProp", "signature congruence system deciding exclusion by characteristic"},
      {"corPrimePow", "exclusion outside prime powers and twice prime powers"},
      {"corSrWideCharp", "vanishing elementary symmetric identities over F_p"},
      {"corBWide", "vanishing elementary symmetric identities at roots of unity"},
      {"propWide", "wideness from e_1..e_{N-1} all zero"},
      {"propSrWide", "wideness of the standard weight configuration"},
      {"yoga", "equivalence of the three symmetric constraint systems"},
      {"COconstr1", "complete homogeneous constraints indexed by proper subsets"},
      {"rmkCharCorn", "characteristic-corner evaluation e_N = (-1)^N"},
      {"SignDiscrep", "sign-system identity pinning the epsilon powers"},
      {"WideVar", "inner and outer variety membership sandwich"},
      {"lemUniqDisc", "uniqueness of the extremal axial disc per (N, k)"},
      {"eqU0", "limit point of an axial disc via minimal eigenprojections"},
      {"eqAxIndex", "index formula for axial discs"},
      {"eqMomMap", "moment identity at the base point"},
      {"eqMomMapDual", "dual form of the moment identity"},
      {"eqZI", "incidence strata by minimal linear dependences"},
      {"DiscClasses", "free basis of disc classes"},
      {"lemPDClass", "dual classes as complete homogeneous polynomials"},
      {"labEvalConstr", "unit evaluation forces an eigenvalue of quantum multiplication"},
      {"labCOPropUnit", "closed-open image is a scalar multiple of the unit"},
      {"labCOCalc", "closed-open evaluation on invariant subvarieties"},
      {"labGenAKS", "generating-class evaluation example"},
      {"eqSSPage", "explicit page formula for the filtered complex"},
      {"labBCWide", "degeneration trichotomy from generator degrees"},
      {"labSSrep", "page endomorphisms induced by symplectomorphisms"},
      {"eqSSrep", "twisted action on page monomials"},
      {"SpinChangeProp", "sign change by the mod-2 pairing with the class"},
      {"exClTor", "rotation action on the torus disc-class basis"},
      {"ClTorComp", "no nonzero equivariant map forces a zero differential"},
      {"rmkChoCl", "equal monodromies annihilate the boundary class"},
      {"CompTwist", "composite twisting reduction homomorphism"},
      {"lemSrRep", "coinvariant algebra is the regular representation"},
      {"corSrFix", "invariants live in degrees divisible by 2N"},
      {"RepDecomp", "periodic decomposition of the quotient ring"},
      {"NonHomogIdeal", "filtration collapse for the inhomogeneous relation"},
      {"eqHPSU", "cohomology of the projective unitary group"},
      {"propInvDegDiv", "divisibility and zeta-sum periodicity conditions"},
      {"corLagPSU", "narrowness conclusions for the unitary family"},
      {"corTorMinMas", "narrowness of tori above the minimal index"},
      {"eqPeriod", "factorization witnessing Betti periodicity"},
      {"eqDimDiv", "divisibility of the factor dimension product"},
      {"eqZetaSum", "vanishing zeta-weighted dimension sum"},
      {"eqSumDiscCounts", "vanishing of the summed disc counts"},
      {"QuiltWide", "signed disc table forcing the quilt verdict"},
      {"eqCOP1P2", "paired closed-open values on the product family"},
      {"labDiscsOnInvtSubvar", "index lower bound for discs meeting strata"},
      {"rmkNovPar", "single-variable reduction at T = 1"},
  };
  return reg;
}

inline bool anchor_known(const std::string& id) {
  return anchor_registry().count(id) > 0;
}

}  // namespace pearl
