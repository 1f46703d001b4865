#include "hyperlace/common/error.hpp"

namespace hyperlace {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::BackendMismatch: return "backend_mismatch";
    case ErrorCode::CapExceeded: return "cap_exceeded";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NotRealRooted: return "not_real_rooted";
    case ErrorCode::NotHyperbolic: return "not_hyperbolic";
    case ErrorCode::NoStructuralRule: return "no_structural_rule";
    case ErrorCode::PreconditionViolated: return "precondition_violated";
    case ErrorCode::OutsideCone: return "outside_cone";
    case ErrorCode::ConeBoundary: return "cone_boundary";
    case ErrorCode::BoundaryUndecided: return "boundary_undecided";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::Malformed: return "malformed";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::ExchangeAxiom: return "exchange_axiom";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace hyperlace
