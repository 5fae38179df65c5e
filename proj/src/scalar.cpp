#include "hermform/scalar.hpp"

#include "hermform/errors.hpp"

#include <ostream>

namespace hermform {

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw InvariantViolation("division by zero Gaussian rational");
    mpq_class n = norm2();
    return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

namespace {

std::string imaginary_part(const mpq_class& im)
{
    if (im == 1)
        return "i";
    if (im == -1)
        return "-i";
    return im.get_str() + "i";
}

} // namespace

std::string Scalar::to_string() const
{
    if (is_zero())
        return "0";
    if (sgn(im_) == 0)
        return re_.get_str();
    if (sgn(re_) == 0)
        return imaginary_part(im_);
    std::string s = re_.get_str();
    std::string imag = imaginary_part(im_);
    if (imag.front() != '-')
        s += '+';
    return s + imag;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.to_string();
}

} // namespace hermform
