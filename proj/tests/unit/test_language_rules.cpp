#include "codetect/stylometry/language_rules.hpp"
#include "codetect/stylometry/tree_sitter_backend.hpp"

#include <doctest.h>
#include <tree_sitter/api.h>

#include <string>

using namespace codetect;

namespace {

bool has_named_symbol(const TSLanguage* ts, std::string_view name) {
    return ts_language_symbol_for_name(ts, name.data(), static_cast<uint32_t>(name.size()), true) != 0;
}

bool has_anonymous_symbol(const TSLanguage* ts, std::string_view name) {
    return ts_language_symbol_for_name(ts, name.data(), static_cast<uint32_t>(name.size()), false) != 0;
}

bool has_field(const TSLanguage* ts, std::string_view name) {
    return name == "*" || ts_language_field_id_for_name(ts, name.data(), static_cast<uint32_t>(name.size())) != 0;
}

}  // namespace

TEST_SUITE("stylometry") {
TEST_CASE("rule tables name real grammar symbols") {
    for (Language lang : supported_languages()) {
        CAPTURE(to_string(lang));
        const TSLanguage* ts = tree_sitter_language(lang);
        REQUIRE(ts != nullptr);
        const LanguageRules& r = rules_for(lang);
        for (auto list : {&r.functions, &r.decisions, &r.branches, &r.assignments, &r.initializers, &r.identifiers,
                          &r.function_declarators}) {
            for (auto name : *list) {
                CAPTURE(std::string(name));
                CHECK(has_named_symbol(ts, name));
            }
        }
        for (auto op : r.boolean_operators) {
            CAPTURE(std::string(op));
            CHECK(has_anonymous_symbol(ts, op));
        }
        for (auto list : {&r.variable_sites, &r.member_access}) {
            for (const auto& [type, field] : *list) {
                CAPTURE(std::string(type));
                CAPTURE(std::string(field));
                CHECK(has_named_symbol(ts, type));
                CHECK(has_field(ts, field));
            }
        }
    }
}
}
