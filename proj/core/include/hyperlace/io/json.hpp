#pragma once

#include <nlohmann/json.hpp>

#include "hyperlace/common/error.hpp"
#include "hyperlace/common/surd.hpp"
#include "hyperlace/hyperb/context.hpp"
#include "hyperlace/partition/partition.hpp"
#include "hyperlace/rayleigh/rayleigh.hpp"

namespace hyperlace {

using Json = nlohmann::json;

/// Rationals travel as lowest-terms "p/q" strings, floats as JSON numbers.
/// Readers accept either form for both backends.
template <class T>
Json scalar_to_json(const T& x);
template <class T>
T scalar_from_json(const Json& j);

template <class T>
Json vector_to_json(const Vector<T>& v);
template <class T>
Vector<T> vector_from_json(const Json& j);

/// {"nvars": n, "backend": ..., "terms": [{"exp": [...], "coef": ...}]}
template <class T>
Json poly_to_json(const MultiPoly<T>& p);
/// Throws BackendMismatch when "backend" names the other backend.
template <class T>
MultiPoly<T> poly_from_json(const Json& j);

/// {"backend": ..., "coeffs": [a0, a1, ...]}
template <class T>
Json unipoly_to_json(const UniPoly<T>& p);
template <class T>
UniPoly<T> unipoly_from_json(const Json& j);

Json surd_to_json(const QuadSurd& x);
Json bracket_to_json(const RootBracket& b);
Json spectrum_to_json(const Spectrum& s);
Json error_to_json(const Error& e);

/// Polynomial, direction and certification evidence in one document.
template <class T>
Json context_to_json(const HyperbolicContext<T>& ctx);
/// Re-certifies on load (structural when a family is recognized, else
/// sampled with the recorded sample count and seed); stored evidence is
/// never trusted.
template <class T>
HyperbolicContext<T> context_from_json(const Json& j);

/// {"kind", "k", "context", "vectors": [[...], ...]}
template <class T>
Json instance_to_json(const Instance<T>& inst);
template <class T>
Instance<T> instance_from_json(const Json& j);

Json certificate_to_json(const PartitionCertificate& cert);
PartitionCertificate certificate_from_json(const Json& j);
Json verify_to_json(const VerifyReport& r);

/// {"n": n, "support": [{"set": [...], "prob": "p/q"}]}, 0-indexed sets.
Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);
/// {"n": n, "bases": [[...], ...]}
Json matroid_to_json(const MatroidView& m);
MatroidView matroid_from_json(const Json& j);
Json packing_to_json(const PackingReport& r);

}  // namespace hyperlace
