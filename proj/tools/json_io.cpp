#include "json_io.hpp"

namespace metab::json_io {

json integer(const Integer& k) {
    if (k.fits_slong_p())
        return static_cast<std::int64_t>(k.get_si());
    return k.get_str();
}

json poly(const LaurentPoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"exp", e}, {"coef", integer(c)}});
    return {{"rank", p.rank()}, {"terms", std::move(terms)}};
}

json nelement(const NElement& f) {
    json out = json::array();
    for (const auto& [pair, phi] : f.coords())
        out.push_back({{"i", pair.i}, {"j", pair.j}, {"poly", poly(phi)}});
    return out;
}

json group_element(const GroupElement& g) {
    return {{"d", g.rank()}, {"q", g.q.exponents()}, {"n", nelement(g.f)}};
}

json spec(const ResidueSpec& s) {
    return {{"d", s.d}, {"c", s.c}, {"n", s.n}, {"t", s.t}, {"m", s.m()}};
}

json rational(const Rational& r) { return {{"num", integer(r.get_num())}, {"den", integer(r.get_den())}}; }

json window(const Window& w) {
    json out = json::array();
    for (std::size_t k = 1; k <= w.rank(); ++k) {
        if (w.bound(k))
            out.push_back(*w.bound(k));
        else
            out.push_back(nullptr);
    }
    return out;
}

std::string decimal(const Rational& r, int digits) {
    Integer scale = 1;
    for (int k = 0; k < digits; ++k)
        scale *= 10;
    // round half away from zero
    Integer num = abs(r.get_num()) * scale * 2 + r.get_den();
    Integer den = r.get_den() * 2;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    std::string s = q.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (sgn(r) < 0 && q != 0)
        s.insert(0, "-");
    return s;
}

}  // namespace metab::json_io
