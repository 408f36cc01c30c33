#include "ssmhd/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssmhd/errors.hpp"

namespace ssmhd {

namespace dop853 {

// Hairer, Norsett & Wanner, Solving ODEs I, 2nd ed.; coefficients of the
// 8(5,3) Dormand-Prince pair with 7th-order dense output.
constexpr double c2 = 0.526001519587677318785587544488e-01;
constexpr double c3 = 0.789002279381515978178381316732e-01;
constexpr double c4 = 0.118350341907227396726757197510e+00;
constexpr double c5 = 0.281649658092772603273242802490e+00;
constexpr double c6 = 0.333333333333333333333333333333e+00;
constexpr double c7 = 0.25e+00;
constexpr double c8 = 0.307692307692307692307692307692e+00;
constexpr double c9 = 0.651282051282051282051282051282e+00;
constexpr double c10 = 0.6e+00;
constexpr double c11 = 0.857142857142857142857142857142e+00;
constexpr double c14 = 0.1e+00;
constexpr double c15 = 0.2e+00;
constexpr double c16 = 0.777777777777777777777777777778e+00;

constexpr double a21 = 5.26001519587677318785587544488e-2;
constexpr double a31 = 1.97250569845378994544595329183e-2;
constexpr double a32 = 5.91751709536136983633785987549e-2;
constexpr double a41 = 2.95875854768068491816892993775e-2;
constexpr double a43 = 8.87627564304205475450678981324e-2;
constexpr double a51 = 2.41365134159266685502369798665e-1;
constexpr double a53 = -8.84549479328286085344864962717e-1;
constexpr double a54 = 9.24834003261792003115737966543e-1;
constexpr double a61 = 3.7037037037037037037037037037e-2;
constexpr double a64 = 1.70828608729473871279604482173e-1;
constexpr double a65 = 1.25467687566822425016691814123e-1;
constexpr double a71 = 3.7109375e-2;
constexpr double a74 = 1.70252211019544039314978060272e-1;
constexpr double a75 = 6.02165389804559606850219397283e-2;
constexpr double a76 = -1.7578125e-2;
constexpr double a81 = 3.70920001185047927108779319836e-2;
constexpr double a84 = 1.70383925712239993810214054705e-1;
constexpr double a85 = 1.07262030446373284651809199168e-1;
constexpr double a86 = -1.53194377486244017527936158236e-2;
constexpr double a87 = 8.27378916381402288758473766002e-3;
constexpr double a91 = 6.24110958716075717114429577812e-1;
constexpr double a94 = -3.36089262944694129406857109825e0;
constexpr double a95 = -8.68219346841726006818189891453e-1;
constexpr double a96 = 2.75920996994467083049415600797e1;
constexpr double a97 = 2.01540675504778934086186788979e1;
constexpr double a98 = -4.34898841810699588477366255144e1;
constexpr double a101 = 4.77662536438264365890433908527e-1;
constexpr double a104 = -2.48811461997166764192642586468e0;
constexpr double a105 = -5.90290826836842996371446475743e-1;
constexpr double a106 = 2.12300514481811942347288949897e1;
constexpr double a107 = 1.52792336328824235832596922938e1;
constexpr double a108 = -3.32882109689848629194453265587e1;
constexpr double a109 = -2.03312017085086261358222928593e-2;
constexpr double a111 = -9.3714243008598732571704021658e-1;
constexpr double a114 = 5.18637242884406370830023853209e0;
constexpr double a115 = 1.09143734899672957818500254654e0;
constexpr double a116 = -8.14978701074692612513997267357e0;
constexpr double a117 = -1.85200656599969598641566180701e1;
constexpr double a118 = 2.27394870993505042818970056734e1;
constexpr double a119 = 2.49360555267965238987089396762e0;
constexpr double a1110 = -3.0467644718982195003823669022e0;
constexpr double a121 = 2.27331014751653820792359768449e0;
constexpr double a124 = -1.05344954667372501984066689879e1;
constexpr double a125 = -2.00087205822486249909675718444e0;
constexpr double a126 = -1.79589318631187989172765950534e1;
constexpr double a127 = 2.79488845294199600508499808837e1;
constexpr double a128 = -2.85899827713502369474065508674e0;
constexpr double a129 = -8.87285693353062954433549289258e0;
constexpr double a1210 = 1.23605671757943030647266201528e1;
constexpr double a1211 = 6.43392746015763530355970484046e-1;

constexpr double a141 = 5.61675022830479523392909219681e-2;
constexpr double a147 = 2.53500210216624811088794765333e-1;
constexpr double a148 = -2.46239037470802489917441475441e-1;
constexpr double a149 = -1.24191423263816360469010140626e-1;
constexpr double a1410 = 1.5329179827876569731206322685e-1;
constexpr double a1411 = 8.20105229563468988491666602057e-3;
constexpr double a1412 = 7.56789766054569976138603589584e-3;
constexpr double a1413 = -8.298e-3;
constexpr double a151 = 3.18346481635021405060768473261e-2;
constexpr double a156 = 2.83009096723667755288322961402e-2;
constexpr double a157 = 5.35419883074385676223797384372e-2;
constexpr double a158 = -5.49237485713909884646569340306e-2;
constexpr double a1511 = -1.08347328697249322858509316994e-4;
constexpr double a1512 = 3.82571090835658412954920192323e-4;
constexpr double a1513 = -3.40465008687404560802977114492e-4;
constexpr double a1514 = 1.41312443674632500278074618366e-1;
constexpr double a161 = -4.28896301583791923408573538692e-1;
constexpr double a166 = -4.69762141536116384314449447206e0;
constexpr double a167 = 7.68342119606259904184240953878e0;
constexpr double a168 = 4.06898981839711007970213554331e0;
constexpr double a169 = 3.56727187455281109270669543021e-1;
constexpr double a1613 = -1.39902416515901462129418009734e-3;
constexpr double a1614 = 2.9475147891527723389556272149e0;
constexpr double a1615 = -9.15095847217987001081870187138e0;

constexpr double b1 = 5.42937341165687622380535766363e-2;
constexpr double b6 = 4.45031289275240888144113950566e0;
constexpr double b7 = 1.89151789931450038304281599044e0;
constexpr double b8 = -5.8012039600105847814672114227e0;
constexpr double b9 = 3.1116436695781989440891606237e-1;
constexpr double b10 = -1.52160949662516078556178806805e-1;
constexpr double b11 = 2.01365400804030348374776537501e-1;
constexpr double b12 = 4.47106157277725905176885569043e-2;

constexpr double e31 = 0.244094488188976377952755905512e+00;
constexpr double e32 = 0.733846688281611857341361741547e+00;
constexpr double e33 = 0.220588235294117647058823529412e-01;

constexpr double e51 = 0.1312004499419488073250102996e-01;
constexpr double e56 = -0.1225156446376204440720569753e+01;
constexpr double e57 = -0.4957589496572501915214079952e+00;
constexpr double e58 = 0.1664377182454986536961530415e+01;
constexpr double e59 = -0.3503288487499736816886487290e+00;
constexpr double e510 = 0.3341791187130174790297318841e+00;
constexpr double e511 = 0.8192320648511571246570742613e-01;
constexpr double e512 = -0.2235530786388629525884427845e-01;

constexpr double d41 = -0.84289382761090128651353491142e+01;
constexpr double d46 = 0.56671495351937776962531783590e+00;
constexpr double d47 = -0.30689499459498916912797304727e+01;
constexpr double d48 = 0.23846676565120698287728149680e+01;
constexpr double d49 = 0.21170345824450282767155149946e+01;
constexpr double d410 = -0.87139158377797299206789907490e+00;
constexpr double d411 = 0.22404374302607882758541771650e+01;
constexpr double d412 = 0.63157877876946881815570249290e+00;
constexpr double d413 = -0.88990336451333310820698117400e-01;
constexpr double d414 = 0.18148505520854727256656404962e+02;
constexpr double d415 = -0.91946323924783554000451984436e+01;
constexpr double d416 = -0.44360363875948939664310572000e+01;
constexpr double d51 = 0.10427508642579134603413151009e+02;
constexpr double d56 = 0.24228349177525818288430175319e+03;
constexpr double d57 = 0.16520045171727028198505394887e+03;
constexpr double d58 = -0.37454675472269020279518312152e+03;
constexpr double d59 = -0.22113666853125306036270938578e+02;
constexpr double d510 = 0.77334326684722638389603898808e+01;
constexpr double d511 = -0.30674084731089398182061213626e+02;
constexpr double d512 = -0.93321305264302278729567221706e+01;
constexpr double d513 = 0.15697238121770843886131091075e+02;
constexpr double d514 = -0.31139403219565177677282850411e+02;
constexpr double d515 = -0.93529243588444783865713862664e+01;
constexpr double d516 = 0.35816841486394083752465898540e+02;
constexpr double d61 = 0.19985053242002433820987653617e+02;
constexpr double d66 = -0.38703730874935176555105901742e+03;
constexpr double d67 = -0.18917813819516756882830838328e+03;
constexpr double d68 = 0.52780815920542364900561016686e+03;
constexpr double d69 = -0.11573902539959630126141871134e+02;
constexpr double d610 = 0.68812326946963000169666922661e+01;
constexpr double d611 = -0.10006050966910838403183860980e+01;
constexpr double d612 = 0.77771377980534432092869265740e+00;
constexpr double d613 = -0.27782057523535084065932004339e+01;
constexpr double d614 = -0.60196695231264120758267380846e+02;
constexpr double d615 = 0.84320405506677161018159903784e+02;
constexpr double d616 = 0.11992291136182789328035130030e+02;
constexpr double d71 = -0.25693933462703749003312586129e+02;
constexpr double d76 = -0.15418974869023643374053993627e+03;
constexpr double d77 = -0.23152937917604549567536039109e+03;
constexpr double d78 = 0.35763911791061412378285349910e+03;
constexpr double d79 = 0.93405324183624310003907691704e+02;
constexpr double d710 = -0.37458323136451633156875139351e+02;
constexpr double d711 = 0.10409964950896230045147246184e+03;
constexpr double d712 = 0.29840293426660503123344363579e+02;
constexpr double d713 = -0.43533456590011143754432175058e+02;
constexpr double d714 = 0.96324553959188282948394950600e+02;
constexpr double d715 = -0.39177261675615439165231486172e+02;
constexpr double d716 = -0.14972683625798562581422125276e+03;

}  // namespace dop853

namespace {

// Work arrays for one integration; k2/k3 are reused for stages 11/12 the way
// the original code does.
struct Stepper {
  explicit Stepper(std::size_t n) : n(n) {
    for (auto* v : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &k8, &k9, &k10, &yw, &yw2, &ywp})
      v->assign(n, 0.0);
  }

  std::size_t n;
  std::vector<double> k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, yw, yw2, ywp;
  long n_rhs = 0;

  // Twelve-stage core; expects k1 = f(t, y). Leaves the weighted slope sum in
  // k4, the proposed state in yw, stage 9 in k9, stages 11/12 in k2/k3.
  void stages(const OdeRhs& f, double t, const std::vector<double>& y, double h) {
    using namespace dop853;
    const double* yp = k1.data();
    for (std::size_t i = 0; i < n; ++i) yw[i] = y[i] + h * (a21 * yp[i]);
    f(t + c2 * h, yw.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i) yw[i] = y[i] + h * (a31 * yp[i] + a32 * k2[i]);
    f(t + c3 * h, yw.data(), k3.data());
    for (std::size_t i = 0; i < n; ++i) yw[i] = y[i] + h * (a41 * yp[i] + a43 * k3[i]);
    f(t + c4 * h, yw.data(), k4.data());
    for (std::size_t i = 0; i < n; ++i)
      yw[i] = y[i] + h * (a51 * yp[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, yw.data(), k5.data());
    for (std::size_t i = 0; i < n; ++i)
      yw[i] = y[i] + h * (a61 * yp[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + c6 * h, yw.data(), k6.data());
    for (std::size_t i = 0; i < n; ++i)
      yw[i] = y[i] + h * (a71 * yp[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    f(t + c7 * h, yw.data(), k7.data());
    for (std::size_t i = 0; i < n; ++i)
      yw[i] = y[i] + h * (a81 * yp[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]);
    f(t + c8 * h, yw.data(), k8.data());
    for (std::size_t i = 0; i < n; ++i)
      yw[i] = y[i] + h * (a91 * yp[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] + a97 * k7[i] +
                          a98 * k8[i]);
    f(t + c9 * h, yw.data(), k9.data());
    for (std::size_t i = 0; i < n; ++i)
      yw[i] = y[i] + h * (a101 * yp[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] +
                          a107 * k7[i] + a108 * k8[i] + a109 * k9[i]);
    f(t + c10 * h, yw.data(), k10.data());
    for (std::size_t i = 0; i < n; ++i)
      yw[i] = y[i] + h * (a111 * yp[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] +
                          a117 * k7[i] + a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
    f(t + c11 * h, yw.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i)
      yw[i] = y[i] + h * (a121 * yp[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] +
                          a127 * k7[i] + a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] +
                          a1211 * k2[i]);
    f(t + h, yw.data(), k3.data());
    n_rhs += 11;
    for (std::size_t i = 0; i < n; ++i) {
      k4[i] = dop853::b1 * yp[i] + dop853::b6 * k6[i] + dop853::b7 * k7[i] + dop853::b8 * k8[i] +
              dop853::b9 * k9[i] + dop853::b10 * k10[i] + dop853::b11 * k2[i] +
              dop853::b12 * k3[i];
      yw[i] = y[i] + h * k4[i];
    }
  }

  // Hairer's combined 5th/3rd-order error estimate, scaled so that 1.0 marks
  // the acceptance boundary.
  double error(const std::vector<double>& y, double h, double rtol, double atol) const {
    using namespace dop853;
    double err3 = 0.0, err5 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sci = atol + rtol * std::max(std::abs(y[i]), std::abs(yw[i]));
      const double e3 = k4[i] - e31 * k1[i] - e32 * k9[i] - e33 * k3[i];
      const double e5 = e51 * k1[i] + e56 * k6[i] + e57 * k7[i] + e58 * k8[i] + e59 * k9[i] +
                        e510 * k10[i] + e511 * k2[i] + e512 * k3[i];
      err3 += (e3 / sci) * (e3 / sci);
      err5 += (e5 / sci) * (e5 / sci);
    }
    double deno = err5 + 0.01 * err3;
    if (deno <= 0.0) deno = 1.0;
    return std::abs(h) * err5 * std::sqrt(1.0 / (static_cast<double>(n) * deno));
  }

  // Power-basis coefficients of the degree-7 interpolant over the accepted
  // step; needs three extra stages. k1 = f(t,y), ywp = f(t+h, yw).
  void dense_coeffs(const OdeRhs& f, double t, const std::vector<double>& y, double h,
                    std::vector<double>& out) {
    using namespace dop853;
    const double* yp = k1.data();
    std::vector<double>& s14 = k10;  // reuse: stages 9/10 are no longer needed
    std::vector<double>& s15 = k2;
    std::vector<double>& s16 = k3;

    std::vector<double> r5(n), r6(n), r7(n), r8(n);
    for (std::size_t i = 0; i < n; ++i) {
      r5[i] = d41 * yp[i] + d46 * k6[i] + d47 * k7[i] + d48 * k8[i] + d49 * k9[i] +
              d410 * k10[i] + d411 * k2[i] + d412 * k3[i];
      r6[i] = d51 * yp[i] + d56 * k6[i] + d57 * k7[i] + d58 * k8[i] + d59 * k9[i] +
              d510 * k10[i] + d511 * k2[i] + d512 * k3[i];
      r7[i] = d61 * yp[i] + d66 * k6[i] + d67 * k7[i] + d68 * k8[i] + d69 * k9[i] +
              d610 * k10[i] + d611 * k2[i] + d612 * k3[i];
      r8[i] = d71 * yp[i] + d76 * k6[i] + d77 * k7[i] + d78 * k8[i] + d79 * k9[i] +
              d710 * k10[i] + d711 * k2[i] + d712 * k3[i];
    }
    for (std::size_t i = 0; i < n; ++i)
      yw2[i] = y[i] + h * (a141 * yp[i] + a147 * k7[i] + a148 * k8[i] + a149 * k9[i] +
                           a1410 * k10[i] + a1411 * k2[i] + a1412 * k3[i] + a1413 * ywp[i]);
    f(t + c14 * h, yw2.data(), s14.data());
    for (std::size_t i = 0; i < n; ++i)
      yw2[i] = y[i] + h * (a151 * yp[i] + a156 * k6[i] + a157 * k7[i] + a158 * k8[i] +
                           a1511 * k2[i] + a1512 * k3[i] + a1513 * ywp[i] + a1514 * s14[i]);
    f(t + c15 * h, yw2.data(), s15.data());
    for (std::size_t i = 0; i < n; ++i)
      yw2[i] = y[i] + h * (a161 * yp[i] + a166 * k6[i] + a167 * k7[i] + a168 * k8[i] +
                           a169 * k9[i] + a1613 * ywp[i] + a1614 * s14[i] + a1615 * s15[i]);
    f(t + c16 * h, yw2.data(), s16.data());
    n_rhs += 3;

    out.resize(8 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r1 = y[i];
      const double r2 = yw[i] - y[i];
      const double r3 = h * yp[i] - r2;
      const double r4 = r2 - h * ywp[i] - r3;
      const double q5 = h * (r5[i] + d413 * ywp[i] + d414 * s14[i] + d415 * s15[i] + d416 * s16[i]);
      const double q6 = h * (r6[i] + d513 * ywp[i] + d514 * s14[i] + d515 * s15[i] + d516 * s16[i]);
      const double q7 = h * (r7[i] + d613 * ywp[i] + d614 * s14[i] + d615 * s15[i] + d616 * s16[i]);
      const double q8 = h * (r8[i] + d713 * ywp[i] + d714 * s14[i] + d715 * s15[i] + d716 * s16[i]);

      // Expand con1 + s(con2 + (1-s)(con3 + s(con4 + (1-s)(con5 + s(con6 +
      // (1-s)(con7 + s con8)))))) into the power basis.
      // F = con7 + s con8
      const double F0 = q7, F1 = q8;
      // E = con6 + (1-s) F
      const double E0 = q6 + F0, E1 = F1 - F0, E2 = -F1;
      // D = con5 + s E
      const double D0 = q5, D1 = E0, D2 = E1, D3 = E2;
      // C = con4 + (1-s) D
      const double C0 = r4 + D0, C1 = D1 - D0, C2 = D2 - D1, C3 = D3 - D2, C4 = -D3;
      // B = con3 + s C
      const double B0 = r3, B1 = C0, B2 = C1, B3 = C2, B4 = C3, B5 = C4;
      // A = con2 + (1-s) B
      const double A0 = r2 + B0, A1 = B1 - B0, A2 = B2 - B1, A3 = B3 - B2, A4 = B4 - B3,
                   A5 = B5 - B4, A6 = -B5;
      double* c = out.data() + 8 * i;
      c[0] = r1;
      c[1] = A0;
      c[2] = A1;
      c[3] = A2;
      c[4] = A3;
      c[5] = A4;
      c[6] = A5;
      c[7] = A6;
    }
  }
};

bool any_bad(const std::vector<double>& y, double limit) {
  for (double v : y)
    if (!std::isfinite(v) || std::abs(v) > limit) return true;
  return false;
}

double initial_step(const OdeRhs& f, double t0, const std::vector<double>& y0,
                    const std::vector<double>& f0, double rtol, double atol, double h_max,
                    long& n_rhs) {
  const std::size_t n = y0.size();
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::abs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / n);
  d1 = std::sqrt(d1 / n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, h_max);

  std::vector<double> y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  f(t0 + h0, y1.data(), f1.data());
  ++n_rhs;
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::abs(y0[i]);
    d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
  }
  d2 = std::sqrt(d2 / n) / h0;
  const double dm = std::max(d1, d2);
  const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 8.0);
  return std::min({100.0 * h0, h1, h_max});
}

}  // namespace

// -- DenseOutput ------------------------------------------------------------

void DenseOutput::add_step(double t0, double h, std::size_t n, const double* coeffs) {
  n_ = n;
  Step s;
  s.t0 = t0;
  s.h = h;
  s.c.assign(coeffs, coeffs + 8 * n);
  steps_.push_back(std::move(s));
}

const DenseOutput::Step& DenseOutput::locate(double t) const {
  if (steps_.empty()) throw Error("DenseOutput: empty");
  auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                             [](double v, const Step& s) { return v < s.t0; });
  if (it != steps_.begin()) --it;
  return *it;
}

void DenseOutput::eval(double t, double* out) const {
  const Step& st = locate(t);
  const double s = (t - st.t0) / st.h;
  for (std::size_t i = 0; i < n_; ++i) {
    const double* c = st.c.data() + 8 * i;
    double v = c[7];
    for (int k = 6; k >= 0; --k) v = v * s + c[k];
    out[i] = v;
  }
}

void DenseOutput::eval_d1(double t, double* out) const {
  const Step& st = locate(t);
  const double s = (t - st.t0) / st.h;
  for (std::size_t i = 0; i < n_; ++i) {
    const double* c = st.c.data() + 8 * i;
    double v = 7.0 * c[7];
    for (int k = 6; k >= 1; --k) v = v * s + k * c[k];
    out[i] = v / st.h;
  }
}

void DenseOutput::eval_d2(double t, double* out) const {
  const Step& st = locate(t);
  const double s = (t - st.t0) / st.h;
  for (std::size_t i = 0; i < n_; ++i) {
    const double* c = st.c.data() + 8 * i;
    double v = 42.0 * c[7];
    for (int k = 6; k >= 2; --k) v = v * s + k * (k - 1) * c[k];
    out[i] = v / (st.h * st.h);
  }
}

double DenseOutput::component(double t, std::size_t i) const {
  const Step& st = locate(t);
  const double s = (t - st.t0) / st.h;
  const double* c = st.c.data() + 8 * i;
  double v = c[7];
  for (int k = 6; k >= 0; --k) v = v * s + c[k];
  return v;
}

double DenseOutput::component_d1(double t, std::size_t i) const {
  const Step& st = locate(t);
  const double s = (t - st.t0) / st.h;
  const double* c = st.c.data() + 8 * i;
  double v = 7.0 * c[7];
  for (int k = 6; k >= 1; --k) v = v * s + k * c[k];
  return v / st.h;
}

double DenseOutput::component_d2(double t, std::size_t i) const {
  const Step& st = locate(t);
  const double s = (t - st.t0) / st.h;
  const double* c = st.c.data() + 8 * i;
  double v = 42.0 * c[7];
  for (int k = 6; k >= 2; --k) v = v * s + k * (k - 1) * c[k];
  return v / (st.h * st.h);
}

// -- adaptive driver ---------------------------------------------------------

OdeResult dop853_integrate(const OdeRhs& rhs, double t0, std::vector<double> y0, double t_end,
                           const OdeOptions& opt) {
  if (!(t_end > t0)) throw DomainError("dop853_integrate: t_end must exceed t0");
  const std::size_t n = y0.size();
  const double h_max = opt.h_max > 0.0 ? std::min(opt.h_max, t_end - t0) : t_end - t0;

  OdeResult res;
  res.y = std::move(y0);
  res.t_reached = t0;

  Stepper w(n);
  rhs(t0, res.y.data(), w.k1.data());
  w.n_rhs = 1;
  double h = opt.h_init > 0.0 ? std::min(opt.h_init, h_max)
                              : initial_step(rhs, t0, res.y, w.k1, opt.rtol, opt.atol, h_max,
                                             w.n_rhs);

  double t = t0;
  bool rejected = false;
  std::vector<double> coeffs;

  while (t < t_end) {
    if (res.n_steps + res.n_rejected >= opt.max_steps) {
      res.status = OdeStatus::max_steps;
      break;
    }
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0)) {
      res.status = OdeStatus::step_collapse;
      break;
    }
    const bool last = t + h >= t_end;
    if (last) h = t_end - t;

    w.stages(rhs, t, res.y, h);
    double err = w.error(res.y, h, opt.rtol, opt.atol);
    if (!std::isfinite(err)) err = 10.0;  // force rejection

    constexpr double kSafe = 0.9, kMinScale = 1.0 / 3.0, kMaxScale = 6.0;
    if (err <= 1.0) {
      double scale =
          err == 0.0 ? kMaxScale
                     : std::clamp(kSafe * std::pow(err, -0.125), kMinScale, kMaxScale);
      if (rejected) scale = std::min(scale, 1.0);

      rhs(t + h, w.yw.data(), w.ywp.data());
      ++w.n_rhs;
      if (opt.dense) {
        w.dense_coeffs(rhs, t, res.y, h, coeffs);
        res.dense.add_step(t, h, n, coeffs.data());
      }
      res.y = w.yw;
      t = last ? t_end : t + h;  // avoid a one-ulp remainder after the last step
      res.t_reached = t;
      ++res.n_steps;
      rejected = false;
      if (any_bad(res.y, opt.blow_up_limit)) {
        res.status = OdeStatus::blow_up;
        break;
      }
      w.k1 = w.ywp;  // first-same-as-last
      if (!last) h = std::min(h * scale, h_max);
    } else {
      h *= std::max(kSafe * std::pow(err, -0.125), kMinScale);
      rejected = true;
      ++res.n_rejected;
    }
  }
  res.n_rhs = w.n_rhs;
  return res;
}

MeshResult dop853_integrate_mesh(const OdeRhs& rhs, std::vector<double> y0,
                                 const std::vector<double>& mesh, double blow_up_limit) {
  if (mesh.size() < 2) throw DomainError("dop853_integrate_mesh: need at least two nodes");
  const std::size_t n = y0.size();
  MeshResult res;
  res.states.reserve(mesh.size());
  res.states.push_back(y0);
  res.nodes_completed = 1;

  Stepper w(n);
  std::vector<double> y = std::move(y0);
  rhs(mesh[0], y.data(), w.k1.data());
  for (std::size_t m = 1; m < mesh.size(); ++m) {
    const double t = mesh[m - 1];
    const double h = mesh[m] - t;
    w.stages(rhs, t, y, h);
    y = w.yw;
    if (any_bad(y, blow_up_limit)) {
      res.status = OdeStatus::blow_up;
      return res;
    }
    rhs(mesh[m], y.data(), w.k1.data());
    res.states.push_back(y);
    res.nodes_completed = m + 1;
  }
  return res;
}

}  // namespace ssmhd
