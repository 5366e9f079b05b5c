#pragma once

#include <nlohmann/json.hpp>

#include "matord/am_obstruction.hpp"
#include "matord/axioms.hpp"
#include "matord/duality.hpp"
#include "matord/positivisation.hpp"
#include "matord/regularity.hpp"

namespace matord {

using nlohmann::json;

// Non-finite reals are written as "inf", "-inf" and "nan".
json real_to_json(double v);
double real_from_json(const json& j);

json to_json(const BaseSpace& X);
BaseSpace space_from_json(const json& j);

// {"level": n, "base_dim": d, "coeffs": [[[re, im] x d] x n^2]}, row-major in (i, j)
json to_json(const LeveledElement& x);
LeveledElement element_from_json(const json& j);

json to_json(const Vec& v);
Vec vec_from_json(const json& j);
json to_json(const Mat& M);  // rows of [re, im]
Mat mat_from_json(const json& j);

json to_json(const NormBracket& b);
json to_json(const ConeVerdict& v);
ConeVerdict verdict_from_json(const json& j);
json to_json(const BlockWitness& w);
json to_json(const NormalityProbe& p);
json to_json(const RegularityReport& r);
json to_json(const AxiomReport& r);
json to_json(const RuanReport& r);
json to_json(const ConeAxiomReport& r);
json to_json(const MinNiceReport& r);
json to_json(const MaxNiceDecomposition& d);
json to_json(const CbcCbReport& r);
json to_json(const AmObstructionReport& r);
json to_json(const PositivisationResult& r);
json to_json(const AlphaPlusProperties& r);
json to_json(const RenormReport& r);
json to_json(const ProductsReport& r);
json to_json(const GenNormalDualityReport& r);

// Rounds every finite number to `digits` significant digits.
json round_numbers(const json& j, int digits = 12);

}  // namespace matord
