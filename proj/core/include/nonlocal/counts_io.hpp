#pragma once

#include <string>

#include "nonlocal/behavior.hpp"

namespace nonlocal {

/// Load a counts file. Schema (JSON):
///   {"dims": {"nx":int,"ny":int,"na":int,"nb":int},
///    "blocks": [{"x":int,"y":int (1-based),
///                "counts": [[int,...],...]            (na rows x nb cols),
///                "background": [[number,...],...]}, ...]}
/// Every (x,y) pair must appear exactly once; "background" is optional and,
/// when present on any block, is taken as 0 on blocks that omit it.
/// Throws ParseError (with position context) or SchemaError (naming the
/// violated invariant and the offending index).
CountsRecord load_counts(const std::string& path);

/// Parse the same schema from an in-memory string (used by load_counts).
CountsRecord parse_counts(const std::string& text);

/// Serialize a CountsRecord to the schema above.
std::string counts_to_json(const CountsRecord& c);
void save_counts(const CountsRecord& c, const std::string& path);

}  // namespace nonlocal
