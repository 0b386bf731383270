#include "codetect/stylometry/language_rules.hpp"

#include "codetect/common.hpp"

#include <array>

namespace codetect {
namespace {

LanguageRules python_rules() {
    LanguageRules r;
    r.functions = {"function_definition"};
    r.decisions = {"if_statement", "elif_clause", "while_statement", "for_statement", "conditional_expression",
                   "match_statement"};
    r.branches = {"if_statement", "elif_clause",   "while_statement", "for_statement", "conditional_expression",
                  "except_clause", "case_clause", "for_in_clause",   "if_clause"};
    r.boolean_operators = {"and", "or"};
    r.assignments = {"assignment", "augmented_assignment", "named_expression"};
    r.variable_sites = {{"assignment", "left"},       {"augmented_assignment", "left"},
                        {"for_statement", "left"},    {"for_in_clause", "left"},
                        {"named_expression", "name"}, {"parameters", "*"},
                        {"lambda_parameters", "*"}};
    r.identifiers = {"identifier"};
    r.member_access = {{"attribute", "attribute"}, {"subscript", "value"}};
    return r;
}

LanguageRules java_rules() {
    LanguageRules r;
    r.functions = {"method_declaration", "constructor_declaration"};
    r.decisions = {"if_statement",           "while_statement",   "do_statement",     "for_statement",
                   "enhanced_for_statement", "ternary_expression", "switch_expression"};
    r.branches = {"if_statement",      "while_statement",    "do_statement", "for_statement",
                  "enhanced_for_statement", "ternary_expression", "catch_clause", "switch_label"};
    r.boolean_operators = {"&&", "||"};
    r.assignments = {"assignment_expression"};
    r.initializers = {"variable_declarator"};
    r.variable_sites = {{"variable_declarator", "name"},    {"formal_parameter", "name"},
                        {"catch_formal_parameter", "name"}, {"enhanced_for_statement", "name"},
                        {"assignment_expression", "left"},  {"inferred_parameters", "*"}};
    r.identifiers = {"identifier"};
    r.member_access = {{"field_access", "field"}, {"array_access", "array"}};
    return r;
}

LanguageRules cpp_rules() {
    LanguageRules r;
    r.functions = {"function_definition"};
    r.decisions = {"if_statement",   "while_statement",        "do_statement",    "for_statement",
                   "for_range_loop", "conditional_expression", "switch_statement"};
    r.branches = {"if_statement",   "while_statement",        "do_statement", "for_statement",
                  "for_range_loop", "conditional_expression", "catch_clause", "case_statement"};
    r.boolean_operators = {"&&", "||", "and", "or"};
    r.assignments = {"assignment_expression"};
    r.initializers = {"init_declarator"};
    r.variable_sites = {{"declaration", "declarator"},
                        {"parameter_declaration", "declarator"},
                        {"optional_parameter_declaration", "declarator"},
                        {"field_declaration", "declarator"},
                        {"for_range_loop", "declarator"},
                        {"assignment_expression", "left"}};
    r.identifiers = {"identifier", "field_identifier"};
    r.member_access = {{"field_expression", "field"}, {"subscript_expression", "argument"}};
    r.function_declarators = {"function_declarator"};
    return r;
}

LanguageRules csharp_rules() {
    LanguageRules r;
    r.functions = {"method_declaration", "constructor_declaration", "local_function_statement"};
    r.decisions = {"if_statement",      "while_statement",        "do_statement",   "for_statement",
                   "foreach_statement", "conditional_expression", "switch_statement"};
    r.branches = {"if_statement",      "while_statement",        "do_statement", "for_statement",
                  "foreach_statement", "conditional_expression", "catch_clause", "switch_section"};
    r.boolean_operators = {"&&", "||"};
    r.assignments = {"assignment_expression"};
    r.initializers = {"variable_declarator"};
    r.variable_sites = {{"variable_declarator", "name"},
                        {"parameter", "name"},
                        {"foreach_statement", "left"},
                        {"assignment_expression", "left"}};
    r.identifiers = {"identifier"};
    r.member_access = {{"member_access_expression", "name"}, {"element_access_expression", "expression"}};
    return r;
}

LanguageRules go_rules() {
    LanguageRules r;
    r.functions = {"function_declaration", "method_declaration"};
    r.decisions = {"if_statement", "for_statement", "expression_switch_statement", "type_switch_statement"};
    r.branches = {"if_statement", "for_statement", "expression_case", "type_case", "communication_case"};
    r.boolean_operators = {"&&", "||"};
    r.assignments = {"assignment_statement", "short_var_declaration"};
    r.initializers = {"var_spec"};
    r.variable_sites = {{"assignment_statement", "left"}, {"short_var_declaration", "left"},
                        {"var_spec", "name"},             {"parameter_declaration", "name"},
                        {"range_clause", "left"}};
    r.identifiers = {"identifier"};
    r.member_access = {{"selector_expression", "field"}, {"index_expression", "operand"}};
    return r;
}

LanguageRules javascript_rules() {
    LanguageRules r;
    r.functions = {"function_declaration", "function_expression", "method_definition", "arrow_function",
                   "generator_function_declaration"};
    r.decisions = {"if_statement",     "while_statement",    "do_statement",    "for_statement",
                   "for_in_statement", "ternary_expression", "switch_statement"};
    r.branches = {"if_statement",     "while_statement",    "do_statement", "for_statement",
                  "for_in_statement", "ternary_expression", "catch_clause", "switch_case"};
    r.boolean_operators = {"&&", "||", "??"};
    r.assignments = {"assignment_expression", "augmented_assignment_expression"};
    r.initializers = {"variable_declarator"};
    r.variable_sites = {{"variable_declarator", "name"},
                        {"assignment_expression", "left"},
                        {"augmented_assignment_expression", "left"},
                        {"formal_parameters", "*"},
                        {"for_in_statement", "left"}};
    r.identifiers = {"identifier", "shorthand_property_identifier_pattern"};
    r.member_access = {{"member_expression", "property"}, {"subscript_expression", "object"}};
    return r;
}

LanguageRules php_rules() {
    LanguageRules r;
    r.functions = {"function_definition", "method_declaration", "anonymous_function", "arrow_function"};
    r.decisions = {"if_statement", "else_if_clause",         "while_statement", "do_statement",
                   "for_statement", "foreach_statement",     "conditional_expression", "switch_statement"};
    r.branches = {"if_statement",      "else_if_clause",         "while_statement", "do_statement", "for_statement",
                  "foreach_statement", "conditional_expression", "catch_clause",    "case_statement"};
    r.boolean_operators = {"&&", "||", "and", "or"};
    r.assignments = {"assignment_expression", "augmented_assignment_expression", "reference_assignment_expression"};
    r.variable_sites = {{"assignment_expression", "left"},
                        {"augmented_assignment_expression", "left"},
                        {"simple_parameter", "name"},
                        {"foreach_statement", "*"}};
    r.identifiers = {"name"};
    r.member_access = {{"member_access_expression", "name"}, {"subscript_expression", "*"}};
    return r;
}

LanguageRules ruby_rules() {
    LanguageRules r;
    r.functions = {"method", "singleton_method"};
    r.decisions = {"if", "elsif", "unless", "while", "until", "for", "conditional", "case"};
    r.branches = {"if", "elsif", "unless", "while", "until", "for", "conditional", "when", "rescue",
                  "if_modifier", "unless_modifier", "while_modifier", "until_modifier"};
    r.boolean_operators = {"&&", "||", "and", "or"};
    r.assignments = {"assignment", "operator_assignment"};
    r.variable_sites = {{"assignment", "left"},        {"operator_assignment", "left"},
                        {"method_parameters", "*"},    {"block_parameters", "*"},
                        {"lambda_parameters", "*"},    {"for", "pattern"}};
    r.identifiers = {"identifier", "instance_variable", "class_variable", "global_variable"};
    r.member_access = {{"call", "method"}, {"element_reference", "object"}};
    return r;
}

}  // namespace

const LanguageRules& rules_for(Language lang) {
    static const std::array<LanguageRules, 8> table = {python_rules(), java_rules(),       cpp_rules(),
                                                       csharp_rules(), go_rules(),         javascript_rules(),
                                                       php_rules(),    ruby_rules()};
    if (lang == Language::other) throw validation_error("no grammar rules for this language");
    return table[static_cast<std::size_t>(lang)];
}

bool is_delimiter_token(std::string_view token) {
    return token == "(" || token == ")" || token == "[" || token == "]" || token == "{" || token == "}" ||
           token == "," || token == ";" || token == ":";
}

}  // namespace codetect
