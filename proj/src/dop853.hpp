#pragma once

// Adaptive eighth-order Dormand-Prince integrator with seventh-order dense
// output, after the DOP853 code of E. Hairer and G. Wanner:
//
//   E. Hairer, S.P. Norsett and G. Wanner, Solving Ordinary Differential
//   Equations I. Nonstiff Problems, 2nd edition, Springer (1993).
//   http://www.unige.ch/~hairer/prog/nonstiff/dop853.f
//
// Rewritten here as a small header-only C++ class over a fixed-size state
// vector. The caller observes every accepted step and can interpolate inside
// it or stop the integration.

#include <array>
#include <cmath>
#include <cstddef>

namespace fdss {

enum class StepStatus { Done, Stopped, StepCollapse, TooManySteps };

struct Dop853Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  double initial_step = 0.0;  // 0 = estimate automatically
  long max_steps = 300000;
};

/// Dense-output polynomial for one accepted step [t_old, t_new].
template <std::size_t NDim>
struct DenseStep {
  double t_old = 0.0;
  double t_new = 0.0;
  std::array<std::array<double, NDim>, 8> rc{};

  double width() const { return t_new - t_old; }

  std::array<double, NDim> eval(double t) const {
    const double s = (t - t_old) / (t_new - t_old);
    const double s1 = 1.0 - s;
    std::array<double, NDim> y;
    for (std::size_t i = 0; i < NDim; ++i)
      y[i] = rc[0][i] + s * (rc[1][i] + s1 * (rc[2][i] + s * (rc[3][i] + s1 * (rc[4][i] +
             s * (rc[5][i] + s1 * (rc[6][i] + s * rc[7][i]))))));
    return y;
  }
};

enum class ObserverControl { Continue, Stop };

/// Explicit Runge-Kutta 8(5,3) pair; `Rhs` is called as rhs(t, y, dydt).
template <std::size_t NDim, class Rhs>
class Dop853 {
 public:
  using StateVec = std::array<double, NDim>;

  struct Result {
    StepStatus status = StepStatus::Done;
    double t = 0.0;
    StateVec y{};
    long n_steps = 0;
    long n_accepted = 0;
    long n_rejected = 0;
  };

  explicit Dop853(Rhs rhs, Dop853Options opts = {}) : rhs_(std::move(rhs)), opts_(opts) {}

  /// Integrates from (t0, y0) to t1 > t0. `observer(dense, y_new)` runs after
  /// each accepted step with the dense polynomial covering it.
  template <class Observer>
  Result integrate(double t0, const StateVec& y0, double t1, Observer&& observer) {
    static constexpr double safe = 0.9, fac1 = 1.0 / 3.0, fac2 = 6.0;
    static constexpr double expo1 = 1.0 / 8.0;
    static constexpr double uround = 2.3e-16;

    Result res;
    double t = t0;
    StateVec y = y0;
    rhs_(t, y, k1_);
    double h = opts_.initial_step > 0.0 ? opts_.initial_step : initial_step(t, y, t1 - t0);
    bool reject = false, last = false;

    while (true) {
      if (res.n_steps >= opts_.max_steps) {
        res.status = StepStatus::TooManySteps;
        break;
      }
      if (0.1 * std::abs(h) <= std::abs(t) * uround) {
        res.status = StepStatus::StepCollapse;
        break;
      }
      if (t + 1.01 * h - t1 > 0.0) {
        h = t1 - t;
        last = true;
      }
      ++res.n_steps;

      StateVec y_new;
      step12(t, y, h, y_new);
      const double err = std::abs(h) * error_norm(y, y_new);

      const double fac11 = std::pow(err, expo1);
      double fac = fac11 / safe;
      fac = std::max(1.0 / fac2, std::min(1.0 / fac1, fac));
      double h_new = h / fac;

      if (err <= 1.0) {
        ++res.n_accepted;
        rhs_(t + h, y_new, k4_);  // stage 13: f at the new point, reused as next k1
        DenseStep<NDim> dense;
        prepare_dense(t, y, h, y_new, dense);
        const double t_new = t + h;
        if (observer(dense, y_new) == ObserverControl::Stop) {
          res.status = StepStatus::Stopped;
          t = t_new;
          y = y_new;
          break;
        }
        k1_ = k4_;
        t = t_new;
        y = y_new;
        if (last) {
          res.status = StepStatus::Done;
          break;
        }
        if (reject) h_new = std::min(std::abs(h_new), std::abs(h));
        reject = false;
      } else {
        h_new = h / std::min(1.0 / fac1, fac11 / safe);
        reject = true;
        last = false;
        ++res.n_rejected;
      }
      h = h_new;
    }

    res.t = t;
    res.y = y;
    return res;
  }

 private:
  Rhs rhs_;
  Dop853Options opts_;
  StateVec k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{}, k8_{}, k9_{}, k10_{};
  StateVec s11_{}, s12_{}, w_{};

  double error_scale(double yi, double yni) const {
    return opts_.abs_tol + opts_.rel_tol * std::max(std::abs(yi), std::abs(yni));
  }

  double initial_step(double t, const StateVec& y, double span) {
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < NDim; ++i) {
      const double sk = opts_.abs_tol + opts_.rel_tol * std::abs(y[i]);
      dnf += (k1_[i] / sk) * (k1_[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, span);
    StateVec y1, k2;
    for (std::size_t i = 0; i < NDim; ++i) y1[i] = y[i] + h * k1_[i];
    rhs_(t + h, y1, k2);
    double der2 = 0.0;
    for (std::size_t i = 0; i < NDim; ++i) {
      const double sk = opts_.abs_tol + opts_.rel_tol * std::abs(y[i]);
      der2 += ((k2[i] - k1_[i]) / sk) * ((k2[i] - k1_[i]) / sk);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = (der12 <= 1e-15) ? std::max(1e-6, std::abs(h) * 1e-3)
                                       : std::pow(0.01 / der12, 1.0 / 8.0);
    return std::min(std::min(100.0 * std::abs(h), h1), span);
  }

  // Twelve-stage core step; leaves the stage vectors loaded for the error
  // estimate and the dense output (k2_/k3_ are reused for stages 11 and 12,
  // matching the reference code).
  void step12(double t, const StateVec& y, double h, StateVec& y_new) {
    static constexpr double c2 = 0.526001519587677318785587544488e-01,
        c3 = 0.789002279381515978178381316732e-01,
        c4 = 0.118350341907227396726757197510e+00,
        c5 = 0.281649658092772603273242802490e+00,
        c6 = 0.333333333333333333333333333333e+00,
        c7 = 0.25e+00,
        c8 = 0.307692307692307692307692307692e+00,
        c9 = 0.651282051282051282051282051282e+00,
        c10 = 0.6e+00,
        c11 = 0.857142857142857142857142857142e+00,
        b1 = 5.42937341165687622380535766363e-2,
        b6 = 4.45031289275240888144113950566e0,
        b7 = 1.89151789931450038304281599044e0,
        b8 = -5.8012039600105847814672114227e0,
        b9 = 3.1116436695781989440891606237e-1,
        b10 = -1.52160949662516078556178806805e-1,
        b11 = 2.01365400804030348374776537501e-1,
        b12 = 4.47106157277725905176885569043e-2,
        a21 = 5.26001519587677318785587544488e-2,
        a31 = 1.97250569845378994544595329183e-2,
        a32 = 5.91751709536136983633785987549e-2,
        a41 = 2.95875854768068491816892993775e-2,
        a43 = 8.87627564304205475450678981324e-2,
        a51 = 2.41365134159266685502369798665e-1,
        a53 = -8.84549479328286085344864962717e-1,
        a54 = 9.24834003261792003115737966543e-1,
        a61 = 3.7037037037037037037037037037e-2,
        a64 = 1.70828608729473871279604482173e-1,
        a65 = 1.25467687566822425016691814123e-1,
        a71 = 3.7109375e-2,
        a74 = 1.70252211019544039314978060272e-1,
        a75 = 6.02165389804559606850219397283e-2,
        a76 = -1.7578125e-2,
        a81 = 3.70920001185047927108779319836e-2,
        a84 = 1.70383925712239993810214054705e-1,
        a85 = 1.07262030446373284651809199168e-1,
        a86 = -1.53194377486244017527936158236e-2,
        a87 = 8.27378916381402288758473766002e-3,
        a91 = 6.24110958716075717114429577812e-1,
        a94 = -3.36089262944694129406857109825e0,
        a95 = -8.68219346841726006818189891453e-1,
        a96 = 2.75920996994467083049415600797e1,
        a97 = 2.01540675504778934086186788979e1,
        a98 = -4.34898841810699588477366255144e1,
        a101 = 4.77662536438264365890433908527e-1,
        a104 = -2.48811461997166764192642586468e0,
        a105 = -5.90290826836842996371446475743e-1,
        a106 = 2.12300514481811942347288949897e1,
        a107 = 1.52792336328824235832596922938e1,
        a108 = -3.32882109689848629194453265587e1,
        a109 = -2.03312017085086261358222928593e-2,
        a111 = -9.3714243008598732571704021658e-1,
        a114 = 5.18637242884406370830023853209e0,
        a115 = 1.09143734899672957818500254654e0,
        a116 = -8.14978701074692612513997267357e0,
        a117 = -1.85200656599969598641566180701e1,
        a118 = 2.27394870993505042818970056734e1,
        a119 = 2.49360555267965238987089396762e0,
        a1110 = -3.0467644718982195003823669022e0,
        a121 = 2.27331014751653820792359768449e0,
        a124 = -1.05344954667372501984066689879e1,
        a125 = -2.00087205822486249909675718444e0,
        a126 = -1.79589318631187989172765950534e1,
        a127 = 2.79488845294199600508499808837e1,
        a128 = -2.85899827713502369474065508674e0,
        a129 = -8.87285693353062954433549289258e0,
        a1210 = 1.23605671757943030647266201528e1,
        a1211 = 6.43392746015763530355970484046e-1;

    StateVec& ww = w_;
    for (std::size_t i = 0; i < NDim; ++i) ww[i] = y[i] + h * a21 * k1_[i];
    rhs_(t + c2 * h, ww, k2_);
    for (std::size_t i = 0; i < NDim; ++i) ww[i] = y[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
    rhs_(t + c3 * h, ww, k3_);
    for (std::size_t i = 0; i < NDim; ++i) ww[i] = y[i] + h * (a41 * k1_[i] + a43 * k3_[i]);
    rhs_(t + c4 * h, ww, k4_);
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a51 * k1_[i] + a53 * k3_[i] + a54 * k4_[i]);
    rhs_(t + c5 * h, ww, k5_);
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a61 * k1_[i] + a64 * k4_[i] + a65 * k5_[i]);
    rhs_(t + c6 * h, ww, k6_);
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a71 * k1_[i] + a74 * k4_[i] + a75 * k5_[i] + a76 * k6_[i]);
    rhs_(t + c7 * h, ww, k7_);
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a81 * k1_[i] + a84 * k4_[i] + a85 * k5_[i] + a86 * k6_[i] +
                          a87 * k7_[i]);
    rhs_(t + c8 * h, ww, k8_);
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a91 * k1_[i] + a94 * k4_[i] + a95 * k5_[i] + a96 * k6_[i] +
                          a97 * k7_[i] + a98 * k8_[i]);
    rhs_(t + c9 * h, ww, k9_);
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a101 * k1_[i] + a104 * k4_[i] + a105 * k5_[i] + a106 * k6_[i] +
                          a107 * k7_[i] + a108 * k8_[i] + a109 * k9_[i]);
    rhs_(t + c10 * h, ww, k10_);
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a111 * k1_[i] + a114 * k4_[i] + a115 * k5_[i] + a116 * k6_[i] +
                          a117 * k7_[i] + a118 * k8_[i] + a119 * k9_[i] + a1110 * k10_[i]);
    rhs_(t + c11 * h, ww, s11_);
    k2_ = s11_;
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a121 * k1_[i] + a124 * k4_[i] + a125 * k5_[i] + a126 * k6_[i] +
                          a127 * k7_[i] + a128 * k8_[i] + a129 * k9_[i] + a1210 * k10_[i] +
                          a1211 * k2_[i]);
    rhs_(t + h, ww, s12_);
    k3_ = s12_;
    for (std::size_t i = 0; i < NDim; ++i) {
      k4_[i] = b1 * k1_[i] + b6 * k6_[i] + b7 * k7_[i] + b8 * k8_[i] + b9 * k9_[i] +
               b10 * k10_[i] + b11 * k2_[i] + b12 * k3_[i];
      y_new[i] = y[i] + h * k4_[i];
    }
  }

  // Combined 5th/3rd order error estimate; expects the stage vectors from
  // step12 (k4_ holds the 8th-order increment).
  double error_norm(const StateVec& y, const StateVec& y_new) const {
    static constexpr double bhh1 = 0.244094488188976377952755905512e+00,
        bhh2 = 0.733846688281611857341361741547e+00,
        bhh3 = 0.220588235294117647058823529412e-01,
        er1 = 0.1312004499419488073250102996e-01,
        er6 = -0.1225156446376204440720569753e+01,
        er7 = -0.4957589496572501915214079952e+00,
        er8 = 0.1664377182454986536961530415e+01,
        er9 = -0.3503288487499736816886487290e+00,
        er10 = 0.3341791187130174790297318841e+00,
        er11 = 0.8192320648511571246570742613e-01,
        er12 = -0.2235530786388629525884427845e-01;
    double err = 0.0, err2 = 0.0;
    for (std::size_t i = 0; i < NDim; ++i) {
      const double sk = 1.0 / error_scale(y[i], y_new[i]);
      double sqr = k4_[i] - bhh1 * k1_[i] - bhh2 * k9_[i] - bhh3 * k3_[i];
      sqr *= sk;
      err2 += sqr * sqr;
      sqr = er1 * k1_[i] + er6 * k6_[i] + er7 * k7_[i] + er8 * k8_[i] + er9 * k9_[i] +
            er10 * k10_[i] + er11 * k2_[i] + er12 * k3_[i];
      sqr *= sk;
      err += sqr * sqr;
    }
    double deno = err + 0.01 * err2;
    if (deno <= 0.0) deno = 1.0;
    return err * std::sqrt(1.0 / (NDim * deno));
  }

  void prepare_dense(double t, const StateVec& y, double h, const StateVec& y_new,
                     DenseStep<NDim>& dense) {
    static constexpr double c14 = 0.1e+00, c15 = 0.2e+00,
        c16 = 0.777777777777777777777777777778e+00,
        a141 = 5.61675022830479523392909219681e-2,
        a147 = 2.53500210216624811088794765333e-1,
        a148 = -2.46239037470802489917441475441e-1,
        a149 = -1.24191423263816360469010140626e-1,
        a1410 = 1.5329179827876569731206322685e-1,
        a1411 = 8.20105229563468988491666602057e-3,
        a1412 = 7.56789766054569976138603589584e-3,
        a1413 = -8.298e-3,
        a151 = 3.18346481635021405060768473261e-2,
        a156 = 2.83009096723667755288322961402e-2,
        a157 = 5.35419883074385676223797384372e-2,
        a158 = -5.49237485713909884646569340306e-2,
        a1511 = -1.08347328697249322858509316994e-4,
        a1512 = 3.82571090835658412954920192323e-4,
        a1513 = -3.40465008687404560802977114492e-4,
        a1514 = 1.41312443674632500278074618366e-1,
        a161 = -4.28896301583791923408573538692e-1,
        a166 = -4.69762141536116384314449447206e0,
        a167 = 7.68342119606259904184240953878e0,
        a168 = 4.06898981839711007970213554331e0,
        a169 = 3.56727187455281109270669543021e-1,
        a1613 = -1.39902416515901462129418009734e-3,
        a1614 = 2.9475147891527723389556272149e0,
        a1615 = -9.15095847217987001081870187138e0,
        d41 = -0.84289382761090128651353491142e+01,
        d46 = 0.56671495351937776962531783590e+00,
        d47 = -0.30689499459498916912797304727e+01,
        d48 = 0.23846676565120698287728149680e+01,
        d49 = 0.21170345824450282767155149946e+01,
        d410 = -0.87139158377797299206789907490e+00,
        d411 = 0.22404374302607882758541771650e+01,
        d412 = 0.63157877876946881815570249290e+00,
        d413 = -0.88990336451333310820698117400e-01,
        d414 = 0.18148505520854727256656404962e+02,
        d415 = -0.91946323924783554000451984436e+01,
        d416 = -0.44360363875948939664310572000e+01,
        d51 = 0.10427508642579134603413151009e+02,
        d56 = 0.24228349177525818288430175319e+03,
        d57 = 0.16520045171727028198505394887e+03,
        d58 = -0.37454675472269020279518312152e+03,
        d59 = -0.22113666853125306036270938578e+02,
        d510 = 0.77334326684722638389603898808e+01,
        d511 = -0.30674084731089398182061213626e+02,
        d512 = -0.93321305264302278729567221706e+01,
        d513 = 0.15697238121770843886131091075e+02,
        d514 = -0.31139403219565177677282850411e+02,
        d515 = -0.93529243588444783865713862664e+01,
        d516 = 0.35816841486394083752465898540e+02,
        d61 = 0.19985053242002433820987653617e+02,
        d66 = -0.38703730874935176555105901742e+03,
        d67 = -0.18917813819516756882830838328e+03,
        d68 = 0.52780815920542364900561016686e+03,
        d69 = -0.11573902539959630126141871134e+02,
        d610 = 0.68812326946963000169666922661e+01,
        d611 = -0.10006050966910838403183860980e+01,
        d612 = 0.77771377980534432092869265740e+00,
        d613 = -0.27782057523535084065932004339e+01,
        d614 = -0.60196695231264120758267380846e+02,
        d615 = 0.84320405506677161018159903784e+02,
        d616 = 0.11992291136182789328035130030e+02,
        d71 = -0.25693933462703749003312586129e+02,
        d76 = -0.15418974869023643374053993627e+03,
        d77 = -0.23152937917604549567536039109e+03,
        d78 = 0.35763911791061412378285349910e+03,
        d79 = 0.93405324183624310003907691704e+02,
        d710 = -0.37458323136451633156875139351e+02,
        d711 = 0.10409964950896230045147246184e+03,
        d712 = 0.29840293426660503123344363579e+02,
        d713 = -0.43533456590011143754432175058e+02,
        d714 = 0.96324553959188282948394950600e+02,
        d715 = -0.39177261675615439165231486172e+02,
        d716 = -0.14972683625798562581422125276e+03;

    dense.t_old = t;
    dense.t_new = t + h;
    for (std::size_t i = 0; i < NDim; ++i) {
      dense.rc[0][i] = y[i];
      const double ydiff = y_new[i] - y[i];
      dense.rc[1][i] = ydiff;
      const double bspl = h * k1_[i] - ydiff;
      dense.rc[2][i] = bspl;
      dense.rc[3][i] = ydiff - h * k4_[i] - bspl;
      dense.rc[4][i] = d41 * k1_[i] + d46 * k6_[i] + d47 * k7_[i] + d48 * k8_[i] +
                       d49 * k9_[i] + d410 * k10_[i] + d411 * k2_[i] + d412 * k3_[i];
      dense.rc[5][i] = d51 * k1_[i] + d56 * k6_[i] + d57 * k7_[i] + d58 * k8_[i] +
                       d59 * k9_[i] + d510 * k10_[i] + d511 * k2_[i] + d512 * k3_[i];
      dense.rc[6][i] = d61 * k1_[i] + d66 * k6_[i] + d67 * k7_[i] + d68 * k8_[i] +
                       d69 * k9_[i] + d610 * k10_[i] + d611 * k2_[i] + d612 * k3_[i];
      dense.rc[7][i] = d71 * k1_[i] + d76 * k6_[i] + d77 * k7_[i] + d78 * k8_[i] +
                       d79 * k9_[i] + d710 * k10_[i] + d711 * k2_[i] + d712 * k3_[i];
    }

    StateVec& ww = w_;
    StateVec e14, e15, e16;
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a141 * k1_[i] + a147 * k7_[i] + a148 * k8_[i] + a149 * k9_[i] +
                          a1410 * k10_[i] + a1411 * k2_[i] + a1412 * k3_[i] + a1413 * k4_[i]);
    rhs_(t + c14 * h, ww, e14);
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a151 * k1_[i] + a156 * k6_[i] + a157 * k7_[i] + a158 * k8_[i] +
                          a1511 * k2_[i] + a1512 * k3_[i] + a1513 * k4_[i] + a1514 * e14[i]);
    rhs_(t + c15 * h, ww, e15);
    for (std::size_t i = 0; i < NDim; ++i)
      ww[i] = y[i] + h * (a161 * k1_[i] + a166 * k6_[i] + a167 * k7_[i] + a168 * k8_[i] +
                          a169 * k9_[i] + a1613 * k4_[i] + a1614 * e14[i] + a1615 * e15[i]);
    rhs_(t + c16 * h, ww, e16);
    for (std::size_t i = 0; i < NDim; ++i) {
      dense.rc[4][i] = h * (dense.rc[4][i] + d413 * k4_[i] + d414 * e14[i] + d415 * e15[i] +
                            d416 * e16[i]);
      dense.rc[5][i] = h * (dense.rc[5][i] + d513 * k4_[i] + d514 * e14[i] + d515 * e15[i] +
                            d516 * e16[i]);
      dense.rc[6][i] = h * (dense.rc[6][i] + d613 * k4_[i] + d614 * e14[i] + d615 * e15[i] +
                            d616 * e16[i]);
      dense.rc[7][i] = h * (dense.rc[7][i] + d713 * k4_[i] + d714 * e14[i] + d715 * e15[i] +
                            d716 * e16[i]);
    }
  }
};

}  // namespace fdss
