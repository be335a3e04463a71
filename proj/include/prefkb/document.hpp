#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "prefkb/knowledge_base.hpp"
#include "prefkb/validation.hpp"

namespace prefkb {

struct LoadOptions {
  /// Strict loading rejects documents whose assertions reference undeclared
  /// individuals (ReferenceError) or fail validation (ValidationFailed).
  /// Lenient loading keeps them and reports the problems.
  bool strict = true;
};

struct LoadResult {
  KnowledgeBase kb;
  ValidationReport report;
};

/// Reads a knowledge-base document (JSON, see docs/FORMAT.md). Throws
/// IoError, ParseError (malformed JSON: "line:column"; schema problems: JSON
/// pointer), ReferenceError for unknown concepts, relations or elements named
/// by records, ValidationFailed for cyclic taxonomies or orders and, in
/// strict mode, invalid assertions.
LoadResult load(const std::filesystem::path& path, const LoadOptions& options = {});
LoadResult load_string(std::string_view text, const LoadOptions& options = {});

/// Canonical document text: records sorted, built-in vocabulary omitted.
/// Saving, loading and saving again yields identical bytes.
std::string to_document_string(const KnowledgeBase& kb);
void save(const KnowledgeBase& kb, const std::filesystem::path& path);

}  // namespace prefkb
