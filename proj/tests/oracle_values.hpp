#pragma once

// Frozen reference values, computed independently with mpmath at 50 decimal
// digits.  The incomplete second-kind integral uses the argument convention
// E(w|m) = int_0^w dn(t|m)^2 dt.

namespace oracle {

// Complete elliptic integrals.
inline constexpr double K_025 = 1.685750354812596042871;
inline constexpr double E_025 = 1.46746220933942715546;
inline constexpr double K_05 = 1.854074677301371918434;
inline constexpr double E_05 = 1.35064388104767550252;
inline constexpr double K_075 = 2.156515647499643235439;
inline constexpr double E_075 = 1.211056027568459524804;
inline constexpr double K_09 = 2.578092113348173188203;
inline constexpr double E_09 = 1.10477473270407332609;

// Jacobi functions and E(w|m) at sample points.
struct JacobiRef {
    double w, m, sn, cn, dn, Earg;
};
inline constexpr JacobiRef jacobi_refs[] = {
    {0.7, 0.25, 0.6342932763351124046, 0.7730925168413342843, 0.9483765127305806404,
     0.6746002467769245939},
    {1.3, 0.75, 0.8929235150418389266, 0.4502083920645269937, 0.6340470780738565466,
     0.9550514350037129972},
    {2.5, 0.9, 0.9996945384505861350, 0.0247149710108986326, 0.3170958006862635887,
     1.0969512203692499902},
    {-1.1, 0.5, -0.8486654795097635588, 0.5289299612316011440, 0.7999271541485709213,
     -0.9381200639141646806},
};

// Breather pulse (xi, tau, s) -> (x, u).
struct PointRef {
    double tau, s, x, u;
};
inline constexpr PointRef breather_03[] = {
    {0.0, 5.0, 3.929000760826212613, -0.1137259286798637628},
    {2.5, -3.0, -2.682367835688584882, 0.5192402711224402434},
};
inline constexpr PointRef breather_038[] = {
    {1.0, 2.0, 0.9029179975012089876, 0.7397111051140472151},
};
inline constexpr PointRef loop_antiloop_12[] = {
    {16.0, 1.0, -3.799999994114038597, -0.0001124072692725491223},
    {0.0, 0.5, 0.2038257762782689787, 4.426455729169965521},
};

// Traveling waves (v = 1, x0 = 0, + sign).
inline constexpr PointRef hump_025[] = {
    {5.0, 1.3, -1.275077475124938617, 1.180473197075339518},
    {0.0, 2.0, 1.571080456727870957, 0.3304901004498911122},
};
inline constexpr PointRef uloop_075[] = {
    {5.0, 1.3, -4.508088167664244367, 0.9421141781813584052},
    {0.0, 0.9, 0.2378124710280143143, 1.112205132994050106},
};
inline constexpr PointRef alternating_075[] = {
    {10.0, 2.0, -11.96157461741067580, -2.395673098109052883},
    {0.0, 1.1, 0.8253982381699483936, 1.831237015891782111},
};

// Arc length of sin(x) over [0, 2 pi].
inline constexpr double arclen_sin_2pi = 7.64039557805542403581;

}  // namespace oracle
