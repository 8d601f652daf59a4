#pragma once

#include <json.hpp>

#include "metab/folner.hpp"
#include "metab/laurent.hpp"
#include "metab/metabelian.hpp"
#include "metab/residue.hpp"

namespace metab::json_io {

using json = nlohmann::ordered_json;

/// Machine-sized integers become JSON numbers, larger ones decimal strings.
json integer(const Integer& k);
/// {"rank": d, "terms": [{"exp": [...], "coef": c}, ...]}
json poly(const LaurentPoly& p);
/// [{"i": i, "j": j, "poly": ...}, ...]
json nelement(const NElement& f);
/// {"d": d, "q": [...], "n": [...]}
json group_element(const GroupElement& g);
json spec(const ResidueSpec& s);
/// {"num": ..., "den": ...}
json rational(const Rational& r);
json window(const Window& w);

/// Rounded decimal rendering with `digits` fractional digits.
std::string decimal(const Rational& r, int digits = 6);

}  // namespace metab::json_io
