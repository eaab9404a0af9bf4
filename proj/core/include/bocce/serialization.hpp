#pragma once

#include <string>

#include "bocce/convergence.hpp"
#include "bocce/functionals.hpp"
#include "bocce/gallery.hpp"
#include "bocce/oscillation.hpp"
#include "bocce/step_function.hpp"
#include "bocce/tight_biting.hpp"

namespace bocce {

/// Rounds to 12 significant digits; every double written to JSON/CSV passes
/// through this, which pins byte-identical output for identical runs.
double round12(double x);
std::string format12(double x);

std::string to_json(const SeqVec& v);
std::string to_json(const Functional& f);
std::string to_json(const StepFunction& f);
std::string to_json(const FunctionSequence& seq);
std::string to_json(const PettisResult& r);
std::string to_json(const ModulusCurve& c);
std::string to_json(const CriterionVerdict& v);
std::string to_json(const TightnessWitness& w);
std::string to_json(const std::vector<TightnessWitness>& ws);
std::string to_json(const BitingDecomposition& b);
std::string to_json(const LatticeReport& r);

SeqVec seqvec_from_json(const std::string& text);
StepFunction step_function_from_json(const std::string& text);
/// Accepts either {"kind", "members", "limit", "label"} or a bare array of
/// step functions (limit then defaults to the zero function).
FunctionSequence sequence_from_json(const std::string& text);

std::string to_csv(const ModulusCurve& c);      // threshold,value rows
std::string report_to_csv(const LatticeReport& r); // k,metric,value rows

} // namespace bocce
