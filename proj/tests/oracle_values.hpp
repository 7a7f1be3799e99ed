#pragma once

// Expected values frozen from independent oracles before the implementation
// was written: a 40-digit scalar evaluation of (1 - e^{-z})/z, closed-form
// 2x2 eigenproblems, and a dense sphere-mesh maximization of
// sigma_max(ad_x) (4e6 Fibonacci-mesh points plus alternating-ascent
// refinement). Nothing here is produced by the code under test.

namespace oracle {

// (1 - e^{-ln 2}) / ln 2 = 0.5 / ln 2
inline constexpr double kPhiLn2 = 0.72134752044448170368;

// phi at z = +-2; also the extremes of |d exp_H(y)| for sl2 at t = 1
inline constexpr double kPhi2 = 0.43233235838169365405;
inline constexpr double kPhiMinus2 = 3.1945280494653251136;

// phi on the series side of the branch switch
inline constexpr double kPhi01 = 0.95162581964040426836;
inline constexpr double kPhiMinus01 = 1.0517091807564762481;
inline constexpr double kPhi1e3 = 0.99950016662500833194;

// phi(0.05 + 0.07i) = a + bi (series branch, complex)
inline constexpr double kPhiSmallComplexRe = 0.97462505613589783062;
inline constexpr double kPhiSmallComplexIm = -0.033841190173805199738;

// phi(3 - 5i) (closed-form branch, complex)
inline constexpr double kPhiLargeComplexRe = 0.079968286236047172755;
inline constexpr double kPhiLargeComplexIm = 0.14919448653416462684;

// Heisenberg h3 at x = e0: singular values of I - E21/2 are
// (sqrt(17) + 1)/4, 1, (sqrt(17) - 1)/4.
inline constexpr double kHeis3Max = 1.2807764064044151375;
inline constexpr double kHeis3Min = 0.78077640640441513746;

// h3 ray: s_max(t) = t/4 + sqrt(1 + t^2/16), s_min(t) = sqrt(1 + t^2/16) - t/4.
inline double heis3_ray_max(double t) {
  const double u = t / 4.0;
  return u + std::sqrt(1.0 + u * u);
}
inline double heis3_ray_min(double t) {
  const double u = t / 4.0;
  return std::sqrt(1.0 + u * u) - u;
}

// Bracket-norm bound pieces for h3 at x = e0 with the Frobenius certificate
// sqrt(2): upper (e^{sqrt 2} - 1)/sqrt 2 and its -2 power.
inline constexpr double kHeis3Thm2Upper = 2.2014004543689957254;
inline constexpr double kHeis3Thm2Lower = 0.20634877568146635897;

// Nilpotent polynomial pieces for h3 at x = e0: Q1(1) = 1 + sqrt(2)/2.
inline constexpr double kHeis3Q1 = 1.7071067811865475244;
inline constexpr double kHeis3InvQ = 0.34314575050761980479;

// Decay floor along the sl2 ray through H: (1 - e^{-2})/2.
inline constexpr double kSl2DecayFloor = 0.43233235838169365405;

// Real-sphere maxima of sigma_max(ad_x), dense mesh + ascent refinement.
inline constexpr double kDelta0LowerHeis3 = 1.0;
inline constexpr double kDelta0LowerSl2 = 2.0;

// Frobenius certificates sqrt(sum_i ||ad_{e_i}||_F^2), exact arithmetic.
inline constexpr double kDelta0CertHeis3 = 1.4142135623730950488;   // sqrt(2)
inline constexpr double kDelta0CertSl2 = 4.2426406871192851464;     // sqrt(18)
inline constexpr double kDelta0CertSo3 = 2.4494897427831780982;     // sqrt(6)

}  // namespace oracle
