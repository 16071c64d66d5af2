#include "hypersect/error.hpp"

namespace hypersect {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidParameter: return "invalid-parameter";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::RegionUnbounded: return "region-unbounded";
        case ErrorKind::ConvexityViolation: return "convexity-violation";
        case ErrorKind::Evaluation: return "evaluation";
        case ErrorKind::IllConditionedRegion: return "ill-conditioned-region";
        case ErrorKind::DegenerateCurvature: return "degenerate-curvature";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

}  // namespace hypersect
