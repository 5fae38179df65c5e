// Fraction-free rank over Z[i]. Each row is scaled to Gaussian integers,
// then Bareiss elimination with column skipping keeps every entry equal to
// a minor of the scaled matrix, so the division by the previous pivot is exact.

#include "hermform/linalg.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace hermform {
namespace {

struct GaussInt {
    mpz_class re{0};
    mpz_class im{0};

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

// Scratch registers reused across the elimination.
struct Scratch {
    mpz_class t1, t2, t3, n;
};

// out = a * b; out must not alias a or b.
void mul_into(GaussInt& out, const GaussInt& a, const GaussInt& b, Scratch& s)
{
    if (sgn(a.im) == 0 && sgn(b.im) == 0) {
        mpz_mul(out.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
        mpz_set_ui(out.im.get_mpz_t(), 0);
        return;
    }
    mpz_mul(s.t1.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
    mpz_submul(s.t1.get_mpz_t(), a.im.get_mpz_t(), b.im.get_mpz_t());
    mpz_mul(s.t2.get_mpz_t(), a.re.get_mpz_t(), b.im.get_mpz_t());
    mpz_addmul(s.t2.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
    mpz_swap(out.re.get_mpz_t(), s.t1.get_mpz_t());
    mpz_swap(out.im.get_mpz_t(), s.t2.get_mpz_t());
}

// a -= b * c
void submul(GaussInt& a, const GaussInt& b, const GaussInt& c)
{
    mpz_submul(a.re.get_mpz_t(), b.re.get_mpz_t(), c.re.get_mpz_t());
    mpz_addmul(a.re.get_mpz_t(), b.im.get_mpz_t(), c.im.get_mpz_t());
    mpz_submul(a.im.get_mpz_t(), b.re.get_mpz_t(), c.im.get_mpz_t());
    mpz_submul(a.im.get_mpz_t(), b.im.get_mpz_t(), c.re.get_mpz_t());
}

// a /= b, assuming b divides a in Z[i].
void divexact_inplace(GaussInt& a, const GaussInt& b, Scratch& s)
{
    if (sgn(b.im) == 0) {
        mpz_divexact(a.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
        mpz_divexact(a.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
        return;
    }
    mpz_mul(s.n.get_mpz_t(), b.re.get_mpz_t(), b.re.get_mpz_t());
    mpz_addmul(s.n.get_mpz_t(), b.im.get_mpz_t(), b.im.get_mpz_t());
    mpz_mul(s.t1.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
    mpz_addmul(s.t1.get_mpz_t(), a.im.get_mpz_t(), b.im.get_mpz_t());
    mpz_mul(s.t2.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
    mpz_submul(s.t2.get_mpz_t(), a.re.get_mpz_t(), b.im.get_mpz_t());
    mpz_divexact(a.re.get_mpz_t(), s.t1.get_mpz_t(), s.n.get_mpz_t());
    mpz_divexact(a.im.get_mpz_t(), s.t2.get_mpz_t(), s.n.get_mpz_t());
}

std::vector<GaussInt> integral_row(std::span<const Scalar> row)
{
    mpz_class l = 1;
    for (const auto& s : row) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.re().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.im().get_den_mpz_t());
    }
    std::vector<GaussInt> out(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) {
        out[k].re = row[k].re().get_num() * (l / row[k].re().get_den());
        out[k].im = row[k].im().get_num() * (l / row[k].im().get_den());
    }
    return out;
}

} // namespace

std::size_t rank_fraction_free(const Matrix& m)
{
    std::vector<std::vector<GaussInt>> a;
    a.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        a.push_back(integral_row(m.row(r)));

    GaussInt prev{1, 0}, tmp;
    Scratch s;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c].is_zero())
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[r], a[p]);
        const GaussInt piv = a[r][c];
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            const GaussInt lead = a[i][c];
            const bool no_lead = lead.is_zero();
            for (std::size_t j = c + 1; j < m.cols(); ++j) {
                GaussInt& x = a[i][j];
                const GaussInt& y = a[r][j];
                const bool y_zero = no_lead || y.is_zero();
                if (x.is_zero()) {
                    if (y_zero)
                        continue;
                    mul_into(x, lead, y, s);
                    mpz_neg(x.re.get_mpz_t(), x.re.get_mpz_t());
                    mpz_neg(x.im.get_mpz_t(), x.im.get_mpz_t());
                } else {
                    mul_into(tmp, piv, x, s);
                    std::swap(x, tmp);
                    if (!y_zero)
                        submul(x, lead, y);
                    if (x.is_zero())
                        continue;
                }
                divexact_inplace(x, prev, s);
            }
            a[i][c] = GaussInt{};
        }
        prev = piv;
        ++r;
    }
    return r;
}

} // namespace hermform
