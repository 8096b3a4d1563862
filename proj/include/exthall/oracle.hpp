#pragma once

#include "exthall/graded.hpp"
#include "exthall/quiver.hpp"
#include "exthall/rng.hpp"

#include <map>

namespace exthall {
namespace oracle {

// Conflation witness X --f--> M --g--> Y in the quiver model: a genuine
// short exact sequence of representations. The extension class is
// determined by (f, g) here, so it is not carried separately.
struct QuiverWitness {
  const QuiverBackend* qb = nullptr;
  QuiverRep X, M, Y;
  RepMorphism f, g;
  IsoClass cx, cm, cy;

  void validate() const;  // f mono, g epi, gf = 0, exact in the middle
};

// Conflation witness in the graded model, with the explicit class
// delta: Y -> X[1] given by degree components delta_n : Y_n -> X_{n+1}.
struct GradedWitness {
  const GradedBackend* gb = nullptr;
  GradedObject X, M, Y;
  std::map<int, FFMatrix> f, g;      // degreewise components X_n -> M_n, M_n -> Y_n
  std::map<int, FFMatrix> delta;     // Y_n -> X_{n+1}
  IsoClass cx, cm, cy;

  void validate() const;  // gf = 0, delta g = 0, cone/cocone classes match
};

// --- brute-force counted sets (quiver) ---

// |W_{XY}^L| by enumerating all morphism pairs and filtering the exactness
// conditions; every matrix tuple is visited, nothing analytic is used
BigInt brute_W_count(const QuiverBackend& qb, const IsoClass& x, const IsoClass& y,
                     const IsoClass& l);

// witnesses (f, g) with middle the canonical representative of L
std::vector<std::pair<RepMorphism, RepMorphism>> enumerate_W(const QuiverBackend& qb,
                                                             const IsoClass& x, const IsoClass& y,
                                                             const IsoClass& l);

// number of orbits of the middle-term automorphism action on W_{XY}^L,
// counted by explicit group enumeration plus union-find
BigInt orbit_count_autL(const QuiverBackend& qb, const IsoClass& x, const IsoClass& y,
                        const IsoClass& l);

// --- image sizes and stabilizers per witness ---

struct ImSizes {
  BigInt im_gL;  // image of Hom(Y,L) -> Hom(L,L), t -> t g
  BigInt im_Yg;  // image of Hom(Y,L) -> Hom(Y,Y), t -> g t
  BigInt im_Lf;  // image of Hom(L,X) -> Hom(L,L), u -> f u
  BigInt im_fX;  // image of Hom(L,X) -> Hom(X,X), u -> u f
};

ImSizes brute_im_sizes(const QuiverWitness& w);
ImSizes brute_im_sizes(const GradedWitness& w);

// stabilizer order of the Aut Y-orbit of the witness inside Aut L
BigInt brute_stabilizer_L(const QuiverWitness& w);
BigInt brute_stabilizer_L(const GradedWitness& w);
// stabilizer order of the Aut L-orbit of the witness inside Aut Y
BigInt brute_stabilizer_Y(const QuiverWitness& w);
BigInt brute_stabilizer_Y(const GradedWitness& w);

// --- radical decomposition of a morphism ---

// class of the common invertible block: the morphism is equivalent under
// base change on both sides to diag(iso, radical part); returns the class
// of the source of the iso block
IsoClass radical_iso_part(const QuiverBackend& qb, const QuiverRep& a, const QuiverRep& b,
                          const RepMorphism& g);
// graded morphisms diagonalize degreewise, so the iso part is the profile
IsoClass radical_iso_part(const GradedBackend& gb, const GradedObject& a, const GradedObject& b,
                          const std::map<int, FFMatrix>& g);

// Krull-Schmidt factors with multiplicity; reassembles to x under dsum
std::vector<IsoClass> decompose(const Model& m, const IsoClass& x);

// --- witness sampling (seeded) ---

QuiverWitness sample_quiver_witness(const QuiverBackend& qb, const IsoClass& x, const IsoClass& y,
                                    SplitMix64& rng);
GradedWitness sample_graded_witness(const GradedBackend& gb, const IsoClass& x, const IsoClass& y,
                                    SplitMix64& rng);

// --- graded brute counts: full matrix filtering ---

BigInt brute_inflation_graded(const GradedBackend& gb, const IsoClass& x, const IsoClass& l,
                              const IsoClass& y);
BigInt brute_deflation_graded(const GradedBackend& gb, const IsoClass& x, const IsoClass& l,
                              const IsoClass& y);
BigInt brute_extension_graded(const GradedBackend& gb, const IsoClass& y, const IsoClass& x,
                              const IsoClass& l);

// --- orbit sums over two-sided orbit sets of W (quiver only) ---

// sum over the orbits of the (Aut L x Aut Y)-action of |End(gY)| / |Aut(gY)|
// where gY is the iso part of the orbit representative's deflation
Rat orbit_sum_defl(const QuiverBackend& qb, const IsoClass& x, const IsoClass& y, const IsoClass& l);
// sum over the orbits of the (Aut X x Aut L)-action of |End(Xf)| / |Aut(Xf)|
// where Xf is the iso part of the orbit representative's inflation
Rat orbit_sum_infl(const QuiverBackend& qb, const IsoClass& x, const IsoClass& y, const IsoClass& l);

}  // namespace oracle
}  // namespace exthall
