#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cantorlab/canjar.hpp"
#include "cantorlab/filters.hpp"
#include "cantorlab/name.hpp"
#include "cantorlab/name_analysis.hpp"
#include "cantorlab/solovay.hpp"

namespace cantorlab {

using Json = nlohmann::ordered_json;

/// {"num": n, "exp": e}; n is a string when it does not fit in 64 bits.
Json to_json(const Dyadic& d);
Dyadic dyadic_from_json(const Json& j);
/// {"num": p, "den": q} for values that need not be dyadic.
Json rational_json(const Rational& r);

Json to_json(const Name& m);
Name name_from_json(const Json& j);

/// Accepts a JSON name or the inline syntax:
///   Ms:<bits>  Malpha:<p>/<q>@<depth>  union:<bits>,<bits>,...
///   indep:<schedule>  vec[<clopen>]  check[<set>]  zero  one
/// combined with !, &, |, parentheses and the postfix `*[<clopen>]`
/// (meet with a constant clopen).
Name parse_name(std::string_view text);

/// A JSON array of names, or one inline name per line (blank lines and
/// lines starting with # are skipped).
std::vector<Name> parse_name_list(std::string_view text);

Json to_json(const MeasureValue& v);
Json to_json(const Density& d);
Json to_json(const DensityResult& d);
Json to_json(const LeqVerdict& v);
Json to_json(const FinitenessVerdict& v);
Json to_json(const FullnessVerdict& v);
Json to_json(const CnVerdict& v);

}  // namespace cantorlab
