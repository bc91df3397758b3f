#ifndef TIMELINE_JSON_IO_H_
#define TIMELINE_JSON_IO_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "timeline/metrics.h"
#include "timeline/model.h"
#include "timeline/relgen.h"
#include "timeline/validate.h"

namespace timeline {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Canonical text of any JSON value written by this library: two-space
// indentation, keys sorted, UTF-8 kept as is, trailing newline.
std::string Dump(const Json &j);

// Parses text, turning syntax errors into SchemaError for `file`.
Json ParseJson(std::string_view text, const std::string &file);

Json ToJson(const AnnotatedDocument &doc);
// Strict: unknown or missing fields and wrong types raise SchemaError with a
// JSON pointer to the offending value.
AnnotatedDocument DocumentFromJson(const Json &j, const std::string &file);

Json ToJson(const Event &e);
Event EventFromJson(const Json &j, const std::string &file,
                    const std::string &pointer);

Json ToJson(const RelationSet &rs);
RelationSet RelationSetFromJson(const Json &j, const std::string &file);

Json ToJson(const ConflictRecord &c);
Json ToJson(const ValidationReport &report);
Json ToJson(const ContingencyMatrix &m);
Json ToJson(const AgreementReport &report);
Json ToJson(const EvalReport &report);
Json ToJson(const CorpusStats &stats);

// "/a/b" pointer segment escaping.
std::string PointerAppend(const std::string &pointer, std::string_view token);
std::string PointerAppend(const std::string &pointer, size_t index);

}  // namespace timeline

#endif  // TIMELINE_JSON_IO_H_
