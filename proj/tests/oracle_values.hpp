// Generated by tests/oracles/compute_oracles.py (mpmath, 40 digits).
#pragma once

namespace oracle {

inline constexpr double kPsi1 = 0.043217405606654007288;
inline constexpr double kPsi100 = 3.6506030794955504273e-137;
inline constexpr double kPsi2 = 0.0018674427438695455238;
inline constexpr double kGammaQuarter = 3.6256099082219083119;
inline constexpr double kZetaHalf = -1.4603545088095868129;
inline constexpr double kXiHalf = 0.49712077818831410991;
inline constexpr double kXi02 = 0.49815551625089118642;
inline constexpr double kIntPsiKernel = -3.9769662255065128793;
inline constexpr double kPsiKernel0 = -0.45678259439334599271;
inline constexpr double kPsiKernel10 = -0.041042499311949397585;
inline constexpr double kLhsHalf_s01 = -3.3215554285034550294;
inline constexpr double kLhsHalf_sig04 = -9.9879506540165482367;
inline constexpr double kPhi00 = -7.9539324510130257586;
inline constexpr double kXiAt14134725 = 1.9597928280872037042e-10;
inline constexpr double kZero1 = 14.13472514173469379;
inline constexpr double kZero2 = 21.022039638771554993;
inline constexpr double kZero3 = 25.010857580145688763;
inline constexpr double kZero4 = 30.42487612585951321;
inline constexpr double kZero5 = 32.935061587739189691;
inline constexpr double kZero6 = 37.586178158825671257;
inline constexpr double kZero7 = 40.918719012147495187;
inline constexpr double kZero8 = 43.327073280914999519;
inline constexpr double kZero9 = 48.005150881167159728;
inline constexpr double kZero10 = 49.773832477672302182;
inline constexpr int kZerosBelow50 = 10;
inline constexpr int kZerosBelow30 = 3;
inline constexpr double kA10 = 0.66666666666666666667;
inline constexpr double kA20 = 0.41666666666666666667;
inline constexpr double kA11 = 0.4;
inline constexpr double kA53 = 0.02162541037037037037;
inline constexpr double kG1_15 = 0.2962962962962962963;
inline constexpr double kG1_25 = 0.042666666666666666667;
inline constexpr double kG3_37 = 0.011410428494178911263;
inline constexpr double kRhsWritten00n1 = 0.25291472679280821794;
inline constexpr double kKristiansenUniform3 = 0.26851851851851851852;
inline constexpr double kStripMin = 1.5445376985932246547e-8;
inline constexpr double kStripArgminSigma = 0.6;
inline constexpr double kStripArgminT = 30.0;

}  // namespace oracle
