// Exact scalar arithmetic: arbitrary-precision rationals (GMP) and
// Gaussian rationals a + bi with componentwise exact operations.
// Everything downstream of this header is float-free.
#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace tncr {

using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

struct GaussRat {
    Rat re{0};
    Rat im{0};

    GaussRat() = default;
    GaussRat(long r) : re(r), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i_unit() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }

    GaussRat operator-() const { return GaussRat(-re, -im); }

    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { a += b; return a; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { a -= b; return a; }

    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }

    // |q|^2, always real and nonnegative.
    Rat norm2() const { return re * re + im * im; }

    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        if (b.is_zero()) throw std::domain_error("GaussRat: division by zero");
        Rat n = b.norm2();
        GaussRat num = a * b.conj();
        return GaussRat(num.re / n, num.im / n);
    }
    GaussRat& operator/=(const GaussRat& o) { *this = *this / o; return *this; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    // Total order for canonical forms (not a ring order).
    friend bool operator<(const GaussRat& a, const GaussRat& b) {
        int c = cmp(a.re, b.re);
        if (c != 0) return c < 0;
        return cmp(a.im, b.im) < 0;
    }
};

// Canonical rendering: "0", "1", "-3/2", "i", "-i", "2i", "1+i", "3/2-2/5i".
inline std::string gr_str(const GaussRat& g) {
    if (g.is_zero()) return "0";
    std::string out;
    if (g.re != 0) out += rat_str(g.re);
    if (g.im != 0) {
        if (g.im == 1) out += out.empty() ? "i" : "+i";
        else if (g.im == -1) out += "-i";
        else {
            std::string istr = rat_str(g.im);
            if (!out.empty() && istr[0] != '-') out += "+";
            out += istr + "i";
        }
    }
    return out;
}

} // namespace tncr
