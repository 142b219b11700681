#include "trim/predicates.hpp"

#include <cmath>

// Floating-point expansion arithmetic in the style of Shewchuk's adaptive
// predicates: the filtered fast path answers when a forward error bound
// certifies the double-precision sign; otherwise the determinant is
// re-evaluated exactly as a sum of nonoverlapping doubles.

namespace trim {

namespace {

constexpr double kEps = 0x1.0p-53;  // half ulp of 1.0
constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccErrBound = (10.0 + 96.0 * kEps) * kEps;

inline void fastTwoSum(double a, double b, double& x, double& y) {
  x = a + b;
  y = b - (x - a);
}

inline void twoSum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void twoDiff(double a, double b, double& x, double& y) {
  x = a - b;
  const double bv = a - x;
  const double av = x + bv;
  y = (a - av) + (bv - b);
}

inline void twoProduct(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

// (a1,a0) - (b1,b0) -> x[0..3], increasing magnitude order
inline void twoTwoDiff(double a1, double a0, double b1, double b0, double* x) {
  double j, r0, i;
  twoDiff(a0, b0, i, x[0]);
  twoSum(a1, i, j, r0);
  double j2, r1;
  twoDiff(r0, b1, i, x[1]);
  twoSum(j, i, j2, r1);
  x[2] = r1;
  x[3] = j2;
}

int fastExpansionSumZeroelim(int elen, const double* e, int flen, const double* f, double* h) {
  double Q, Qnew, hh;
  int eindex = 0, findex = 0, hindex = 0;
  double enow = e[0], fnow = f[0];
  if ((fnow > enow) == (fnow > -enow)) {
    Q = enow;
    if (++eindex < elen) enow = e[eindex];
  } else {
    Q = fnow;
    if (++findex < flen) fnow = f[findex];
  }
  if (eindex < elen && findex < flen) {
    if ((fnow > enow) == (fnow > -enow)) {
      fastTwoSum(enow, Q, Qnew, hh);
      if (++eindex < elen) enow = e[eindex];
    } else {
      fastTwoSum(fnow, Q, Qnew, hh);
      if (++findex < flen) fnow = f[findex];
    }
    Q = Qnew;
    if (hh != 0.0) h[hindex++] = hh;
    while (eindex < elen && findex < flen) {
      if ((fnow > enow) == (fnow > -enow)) {
        twoSum(Q, enow, Qnew, hh);
        if (++eindex < elen) enow = e[eindex];
      } else {
        twoSum(Q, fnow, Qnew, hh);
        if (++findex < flen) fnow = f[findex];
      }
      Q = Qnew;
      if (hh != 0.0) h[hindex++] = hh;
    }
  }
  while (eindex < elen) {
    twoSum(Q, enow, Qnew, hh);
    if (++eindex < elen) enow = e[eindex];
    Q = Qnew;
    if (hh != 0.0) h[hindex++] = hh;
  }
  while (findex < flen) {
    twoSum(Q, fnow, Qnew, hh);
    if (++findex < flen) fnow = f[findex];
    Q = Qnew;
    if (hh != 0.0) h[hindex++] = hh;
  }
  if (Q != 0.0 || hindex == 0) h[hindex++] = Q;
  return hindex;
}

int scaleExpansionZeroelim(int elen, const double* e, double b, double* h) {
  double Q, sum, hh, p1, p0;
  int hindex = 0;
  twoProduct(e[0], b, Q, hh);
  if (hh != 0.0) h[hindex++] = hh;
  for (int i = 1; i < elen; ++i) {
    twoProduct(e[i], b, p1, p0);
    twoSum(Q, p0, sum, hh);
    if (hh != 0.0) h[hindex++] = hh;
    fastTwoSum(p1, sum, Q, hh);
    if (hh != 0.0) h[hindex++] = hh;
  }
  if (Q != 0.0 || hindex == 0) h[hindex++] = Q;
  return hindex;
}

double orient2dExact(const double* pa, const double* pb, const double* pc) {
  double axby1, axby0, axcy1, axcy0, bxcy1, bxcy0, bxay1, bxay0, cxay1, cxay0, cxby1, cxby0;
  double aterms[4], bterms[4], cterms[4], v[8], w[12];

  twoProduct(pa[0], pb[1], axby1, axby0);
  twoProduct(pa[0], pc[1], axcy1, axcy0);
  twoTwoDiff(axby1, axby0, axcy1, axcy0, aterms);

  twoProduct(pb[0], pc[1], bxcy1, bxcy0);
  twoProduct(pb[0], pa[1], bxay1, bxay0);
  twoTwoDiff(bxcy1, bxcy0, bxay1, bxay0, bterms);

  twoProduct(pc[0], pa[1], cxay1, cxay0);
  twoProduct(pc[0], pb[1], cxby1, cxby0);
  twoTwoDiff(cxay1, cxay0, cxby1, cxby0, cterms);

  const int vlen = fastExpansionSumZeroelim(4, aterms, 4, bterms, v);
  const int wlen = fastExpansionSumZeroelim(vlen, v, 4, cterms, w);
  return w[wlen - 1];
}

double incircleExact(const double* pa, const double* pb, const double* pc, const double* pd) {
  double t1, t0, s1, s0;
  double ab[4], bc[4], cd[4], da[4], ac[4], bd[4];

  twoProduct(pa[0], pb[1], t1, t0);
  twoProduct(pb[0], pa[1], s1, s0);
  twoTwoDiff(t1, t0, s1, s0, ab);

  twoProduct(pb[0], pc[1], t1, t0);
  twoProduct(pc[0], pb[1], s1, s0);
  twoTwoDiff(t1, t0, s1, s0, bc);

  twoProduct(pc[0], pd[1], t1, t0);
  twoProduct(pd[0], pc[1], s1, s0);
  twoTwoDiff(t1, t0, s1, s0, cd);

  twoProduct(pd[0], pa[1], t1, t0);
  twoProduct(pa[0], pd[1], s1, s0);
  twoTwoDiff(t1, t0, s1, s0, da);

  twoProduct(pa[0], pc[1], t1, t0);
  twoProduct(pc[0], pa[1], s1, s0);
  twoTwoDiff(t1, t0, s1, s0, ac);

  twoProduct(pb[0], pd[1], t1, t0);
  twoProduct(pd[0], pb[1], s1, s0);
  twoTwoDiff(t1, t0, s1, s0, bd);

  double temp8[8], cda[12], dab[12], abc[12], bcd[12];
  int t8len = fastExpansionSumZeroelim(4, cd, 4, da, temp8);
  const int cdalen = fastExpansionSumZeroelim(t8len, temp8, 4, ac, cda);
  t8len = fastExpansionSumZeroelim(4, da, 4, ab, temp8);
  const int dablen = fastExpansionSumZeroelim(t8len, temp8, 4, bd, dab);
  for (int i = 0; i < 4; ++i) {
    bd[i] = -bd[i];
    ac[i] = -ac[i];
  }
  t8len = fastExpansionSumZeroelim(4, ab, 4, bc, temp8);
  const int abclen = fastExpansionSumZeroelim(t8len, temp8, 4, ac, abc);
  t8len = fastExpansionSumZeroelim(4, bc, 4, cd, temp8);
  const int bcdlen = fastExpansionSumZeroelim(t8len, temp8, 4, bd, bcd);

  double tmp[48], detx[96], dety[96], adet[192], bdet[192], cdet[192], ddet[192];
  int xlen, ylen;

  xlen = scaleExpansionZeroelim(bcdlen, bcd, pa[0], tmp);
  xlen = scaleExpansionZeroelim(xlen, tmp, pa[0], detx);
  ylen = scaleExpansionZeroelim(bcdlen, bcd, pa[1], tmp);
  ylen = scaleExpansionZeroelim(ylen, tmp, pa[1], dety);
  const int alen = fastExpansionSumZeroelim(xlen, detx, ylen, dety, adet);

  xlen = scaleExpansionZeroelim(cdalen, cda, pb[0], tmp);
  xlen = scaleExpansionZeroelim(xlen, tmp, -pb[0], detx);
  ylen = scaleExpansionZeroelim(cdalen, cda, pb[1], tmp);
  ylen = scaleExpansionZeroelim(ylen, tmp, -pb[1], dety);
  const int blen = fastExpansionSumZeroelim(xlen, detx, ylen, dety, bdet);

  xlen = scaleExpansionZeroelim(dablen, dab, pc[0], tmp);
  xlen = scaleExpansionZeroelim(xlen, tmp, pc[0], detx);
  ylen = scaleExpansionZeroelim(dablen, dab, pc[1], tmp);
  ylen = scaleExpansionZeroelim(ylen, tmp, pc[1], dety);
  const int clen = fastExpansionSumZeroelim(xlen, detx, ylen, dety, cdet);

  xlen = scaleExpansionZeroelim(abclen, abc, pd[0], tmp);
  xlen = scaleExpansionZeroelim(xlen, tmp, -pd[0], detx);
  ylen = scaleExpansionZeroelim(abclen, abc, pd[1], tmp);
  ylen = scaleExpansionZeroelim(ylen, tmp, -pd[1], dety);
  const int dlen = fastExpansionSumZeroelim(xlen, detx, ylen, dety, ddet);

  double abdet[384], cddet[384], deter[768];
  const int ablen2 = fastExpansionSumZeroelim(alen, adet, blen, bdet, abdet);
  const int cdlen2 = fastExpansionSumZeroelim(clen, cdet, dlen, ddet, cddet);
  const int dlen2 = fastExpansionSumZeroelim(ablen2, abdet, cdlen2, cddet, deter);
  return deter[dlen2 - 1];
}

}  // namespace

double orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const double detleft = (a.x() - c.x()) * (b.y() - c.y());
  const double detright = (a.y() - c.y()) * (b.x() - c.x());
  const double det = detleft - detright;
  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det;
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det;
    detsum = -detleft - detright;
  } else {
    return det;  // detleft == 0: det == -detright, already exact
  }
  const double errbound = kCcwErrBound * detsum;
  if (det >= errbound || -det >= errbound) return det;
  const double pa[2] = {a.x(), a.y()}, pb[2] = {b.x(), b.y()}, pc[2] = {c.x(), c.y()};
  return orient2dExact(pa, pb, pc);
}

double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                const Eigen::Vector2d& d) {
  const double adx = a.x() - d.x(), ady = a.y() - d.y();
  const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
  const double cdx = c.x() - d.x(), cdy = c.y() - d.y();

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                     clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double errbound = kIccErrBound * permanent;
  if (det > errbound || -det > errbound) return det;
  const double pa[2] = {a.x(), a.y()}, pb[2] = {b.x(), b.y()};
  const double pc[2] = {c.x(), c.y()}, pd[2] = {d.x(), d.y()};
  return incircleExact(pa, pb, pc, pd);
}

}  // namespace trim
