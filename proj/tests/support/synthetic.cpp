#include "synthetic.hpp"

#include "codetect/common.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace codetect::synth {

namespace {

bool chance(Rng& rng, double p) { return uniform01(rng) < p; }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform_index(rng, v.size()))];
}

int pick_int(Rng& rng, int lo, int hi) { return lo + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(hi - lo + 1))); }

struct Style {
    bool human = true;
    double p_spaced = 1.0;
    double p_blank = 0.0;
    bool helper = false;
    int indent = 4;
    double p_comment = 0.0;
    int verbosity = 0;
    double p_omit_braces = 0.0;
    bool allman = false;
    double p_compact = 0.0;
    bool type_hints = false;
    bool docstring = false;
};

Style human_style(Language lang, Rng& rng) {
    Style s;
    s.human = true;
    if (chance(rng, 0.15)) {
        // tidy human
        s.p_spaced = 0.95;
        s.p_blank = 0.25;
        s.verbosity = 1;
        s.p_comment = 0.2;
    } else {
        s.p_spaced = 0.15 + 0.7 * uniform01(rng);
        s.p_blank = chance(rng, 0.5) ? 0.0 : 0.1;
        s.verbosity = chance(rng, 0.3) ? 1 : 0;
        s.p_comment = chance(rng, 0.2) ? 0.3 : 0.0;
    }
    s.helper = chance(rng, 0.1);
    s.indent = lang == Language::python ? (chance(rng, 0.8) ? 4 : 2) : (chance(rng, 0.5) ? 4 : 2);
    s.p_omit_braces = chance(rng, 0.5) ? 0.6 : 0.0;
    s.allman = chance(rng, 0.15);
    s.p_compact = chance(rng, 0.3) ? 0.5 : 0.0;
    return s;
}

Style generator_style(Generator g, Rng& rng) {
    Style s;
    s.human = false;
    s.indent = 4;
    switch (g) {
        case Generator::gpt4o:
            s.p_spaced = 1.0;
            s.p_blank = 0.7;
            s.helper = chance(rng, 0.7);
            s.p_comment = 0.8;
            s.verbosity = 2;
            s.type_hints = chance(rng, 0.6);
            s.docstring = chance(rng, 0.5);
            break;
        case Generator::codellama:
            s.p_spaced = 0.9;
            s.p_blank = 0.3;
            s.helper = chance(rng, 0.25);
            s.p_comment = 0.4;
            s.verbosity = chance(rng, 0.6) ? 1 : 2;
            s.indent = chance(rng, 0.8) ? 4 : 2;
            s.p_omit_braces = 0.1;
            break;
        case Generator::llama31:
            s.p_spaced = 1.0;
            s.p_blank = 0.45;
            s.helper = chance(rng, 0.5);
            s.p_comment = 0.6;
            s.verbosity = chance(rng, 0.5) ? 1 : 2;
            s.type_hints = chance(rng, 0.2);
            break;
        case Generator::codeqwen15:
        case Generator::nxcode:
            s.p_spaced = 1.0;
            s.p_blank = 0.55;
            s.helper = chance(rng, 0.4);
            s.p_comment = g == Generator::nxcode ? 0.35 : 0.3;
            s.verbosity = 2;
            s.type_hints = chance(rng, 0.4);
            s.docstring = chance(rng, 0.2);
            break;
        case Generator::other:
            s.p_spaced = 1.0;
            s.p_blank = 0.5;
            s.verbosity = 2;
            break;
    }
    return s;
}

std::string camel(const std::string& snake) {
    std::string out;
    bool up = false;
    for (char c : snake) {
        if (c == '_') {
            up = true;
        } else {
            out += up ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
            up = false;
        }
    }
    return out;
}

enum Role { acc, item, item2, idx, jdx, arr, cnt, rem, res, best, pairs, parity, kparam, fn, helper_fn, role_count };

const std::vector<std::string>& pool(Role r, int verbosity) {
    static const std::map<std::pair<int, int>, std::vector<std::string>> pools = {
        {{acc, 0}, {"s", "sum", "ans", "tot"}},
        {{acc, 1}, {"total", "sum_val", "acc"}},
        {{acc, 2}, {"total_sum", "running_total", "total"}},
        {{item, 0}, {"x", "v", "e"}},
        {{item, 1}, {"num", "val", "x"}},
        {{item, 2}, {"num", "value", "element", "current_value"}},
        {{item2, 0}, {"y", "w", "t"}},
        {{item2, 1}, {"cur", "item"}},
        {{item2, 2}, {"candidate", "current", "item"}},
        {{idx, 0}, {"i"}},
        {{idx, 1}, {"i", "idx"}},
        {{idx, 2}, {"index", "idx", "i"}},
        {{jdx, 0}, {"j"}},
        {{jdx, 1}, {"j"}},
        {{jdx, 2}, {"other_index", "j"}},
        {{arr, 0}, {"a", "arr", "v"}},
        {{arr, 1}, {"nums", "arr", "a"}},
        {{arr, 2}, {"numbers", "nums", "values"}},
        {{cnt, 0}, {"c", "cnt", "ops"}},
        {{cnt, 1}, {"count", "cnt", "steps"}},
        {{cnt, 2}, {"step_count", "steps", "halving_count"}},
        {{rem, 0}, {"m", "r", "z"}},
        {{rem, 1}, {"rem", "m"}},
        {{rem, 2}, {"remaining", "current_size"}},
        {{res, 0}, {"b", "out", "r2"}},
        {{res, 1}, {"res", "out"}},
        {{res, 2}, {"result", "filtered_values", "doubled_values"}},
        {{best, 0}, {"mx", "hi", "m2"}},
        {{best, 1}, {"best", "mx"}},
        {{best, 2}, {"max_value", "largest", "best_value"}},
        {{pairs, 0}, {"p", "cp", "pc"}},
        {{pairs, 1}, {"pairs", "cnt2"}},
        {{pairs, 2}, {"pair_count", "valid_pairs"}},
        {{parity, 0}, {"f", "par", "odd"}},
        {{parity, 1}, {"flag", "parity"}},
        {{parity, 2}, {"parity_flag", "is_even_length"}},
        {{kparam, 0}, {"k"}},
        {{kparam, 1}, {"k", "d"}},
        {{kparam, 2}, {"divisor", "k"}},
        {{fn, 0}, {"solve", "f", "calc", "go"}},
        {{fn, 1}, {"solve", "calc", "compute"}},
        {{fn, 2}, {"compute_total", "process_numbers", "analyze_values"}},
        {{helper_fn, 0}, {"ok", "good"}},
        {{helper_fn, 1}, {"check", "valid"}},
        {{helper_fn, 2}, {"is_valid", "is_divisible"}},
    };
    return pools.at({r, verbosity});
}

const std::set<std::string>& reserved() {
    static const std::set<std::string> words{"sum", "int", "len", "range", "print", "max", "min", "list", "map",
                                             "input", "new", "out", "a1"};
    return words;
}

class Names {
public:
    std::string get(Role r, const Style& st, Language lang, Rng& rng) {
        if (!names_[r].empty()) return names_[r];
        std::string name = pick(rng, pool(r, st.verbosity));
        if (lang != Language::python) {
            name = camel(name);
            // keep Java/C++ identifiers legal and free of library clashes
            if (name == "out" && lang == Language::cpp) name = "outv";
        } else if (name == "sum" || name == "input") {
            name += "_";
        }
        while (used_.count(name)) name += "2";
        used_.insert(name);
        names_[r] = name;
        return name;
    }

private:
    std::string names_[role_count];
    std::set<std::string> used_;
};

struct Line {
    int depth = 0;
    std::string text;
    bool human = true;
    bool comment = false;
    bool blank = false;
};

struct Stmt {
    std::string text;  // simple statement, or block header without ':' / '{'
    std::vector<Stmt> body;
    std::vector<Stmt> else_body;
    bool block = false;
    bool comment = false;
};

class Builder {
public:
    Builder(Language lang, Rng& rng) : lang_(lang), rng_(rng) {}

    bool py() const { return lang_ == Language::python; }
    std::string end() const { return py() ? "" : ";"; }

    std::string op(const Style& st, const std::string& a, const std::string& o, const std::string& b) {
        return chance(rng_, st.p_spaced) ? a + " " + o + " " + b : a + o + b;
    }
    std::string land() const { return py() ? "and" : "&&"; }
    std::string len(const std::string& a) const {
        switch (lang_) {
            case Language::python: return "len(" + a + ")";
            case Language::java: return a + ".length";
            default: return "(int) " + a + ".size()";
        }
    }
    Stmt simple(std::string t) { return Stmt{std::move(t), {}, {}, false, false}; }
    Stmt decl(const std::string& name, const std::string& expr, const Style& st) {
        const std::string lhs = py() ? name : "int " + name;
        return simple(op(st, lhs, "=", expr) + end());
    }
    Stmt assign(const std::string& name, const std::string& expr, const Style& st) {
        return simple(op(st, name, "=", expr) + end());
    }
    Stmt aug(const std::string& name, const std::string& o, const std::string& expr, const Style& st) {
        if (!py() && o == "+=" && expr == "1" && st.human && chance(rng_, 0.6)) return simple(name + "++;");
        return simple(op(st, name, o, expr) + end());
    }
    Stmt decl_list(const std::string& name) {
        switch (lang_) {
            case Language::python: return simple(name + " = []");
            case Language::java: return simple("List<Integer> " + name + " = new ArrayList<>();");
            default: return simple("vector<int> " + name + ";");
        }
    }
    Stmt append(const std::string& list, const std::string& expr) {
        switch (lang_) {
            case Language::python: return simple(list + ".append(" + expr + ")");
            case Language::java: return simple(list + ".add(" + expr + ");");
            default: return simple(list + ".push_back(" + expr + ");");
        }
    }
    Stmt block(std::string header, std::vector<Stmt> body, std::vector<Stmt> else_body = {}) {
        return Stmt{std::move(header), std::move(body), std::move(else_body), true, false};
    }
    Stmt foreach_(const std::string& item, const std::string& arr, std::vector<Stmt> body) {
        if (py()) return block("for " + item + " in " + arr, std::move(body));
        return block("for (int " + item + " : " + arr + ")", std::move(body));
    }
    Stmt for_range(const std::string& i, const std::string& from, const std::string& to, const Style& st,
                   std::vector<Stmt> body) {
        if (py()) {
            const std::string r = from == "0" && chance(rng_, 0.5) ? "range(" + to + ")" : "range(" + from + ", " + to + ")";
            return block("for " + i + " in " + r, std::move(body));
        }
        const std::string inc = chance(rng_, 0.8) ? i + "++" : "++" + i;
        return block("for (int " + op(st, i, "=", from) + "; " + op(st, i, "<", to) + "; " + inc + ")",
                     std::move(body));
    }
    Stmt if_(const std::string& cond, std::vector<Stmt> body, std::vector<Stmt> else_body = {}) {
        if (py()) return block("if " + cond, std::move(body), std::move(else_body));
        return block("if (" + cond + ")", std::move(body), std::move(else_body));
    }
    Stmt while_(const std::string& cond, std::vector<Stmt> body) {
        if (py()) return block("while " + cond, std::move(body));
        return block("while (" + cond + ")", std::move(body));
    }
    Stmt comment(const std::string& text) {
        Stmt s = simple((py() ? "# " : "// ") + text);
        s.comment = true;
        return s;
    }
    Stmt ret(const std::string& expr) { return simple("return " + expr + end()); }
    std::string ternary(const std::string& c, const std::string& a, const std::string& b) const {
        return py() ? a + " if " + c + " else " + b : c + " ? " + a + " : " + b;
    }

    void emit(std::vector<Line>& out, const Stmt& s, int depth, const Style& st) {
        if (!s.block) {
            out.push_back({depth, s.text, st.human, s.comment, false});
            return;
        }
        const bool single = s.body.size() == 1 && !s.body[0].block && !s.body[0].comment && s.else_body.empty();
        if (py()) {
            if (single && chance(rng_, st.p_compact)) {
                out.push_back({depth, s.text + ": " + s.body[0].text, st.human, false, false});
                return;
            }
            out.push_back({depth, s.text + ":", st.human, false, false});
            for (const auto& b : s.body) emit(out, b, depth + 1, st);
            if (!s.else_body.empty()) {
                out.push_back({depth, "else:", st.human, false, false});
                for (const auto& b : s.else_body) emit(out, b, depth + 1, st);
            }
            return;
        }
        if (single && chance(rng_, st.p_omit_braces)) {
            out.push_back({depth, s.text, st.human, false, false});
            emit(out, s.body[0], depth + 1, st);
            return;
        }
        if (st.allman) {
            out.push_back({depth, s.text, st.human, false, false});
            out.push_back({depth, "{", st.human, false, false});
        } else {
            out.push_back({depth, s.text + " {", st.human, false, false});
        }
        for (const auto& b : s.body) emit(out, b, depth + 1, st);
        if (!s.else_body.empty()) {
            if (st.allman) {
                out.push_back({depth, "}", st.human, false, false});
                out.push_back({depth, "else", st.human, false, false});
                out.push_back({depth, "{", st.human, false, false});
            } else {
                out.push_back({depth, "} else {", st.human, false, false});
            }
            for (const auto& b : s.else_body) emit(out, b, depth + 1, st);
        }
        out.push_back({depth, "}", st.human, false, false});
    }

private:
    Language lang_;
    Rng& rng_;
};

enum Snippet { sum_if, count_while, build_list, max_track, pair_loop, parity_flag, snippet_count };

struct Block {
    std::vector<Stmt> stmts;
    std::string result;  // scalar expression this block contributes
    const char* comment;
};

Block make_block(Snippet kind, Builder& b, Names& names, const Style& st, const Style& header_style, Language lang,
                 Rng& rng) {
    const std::string a = names.get(arr, header_style, lang, rng);
    const std::string k = names.get(kparam, header_style, lang, rng);
    Block out;
    switch (kind) {
        case sum_if: {
            const std::string s = names.get(acc, st, lang, rng);
            const std::string x = names.get(item, st, lang, rng);
            const std::string cond = st.helper ? names.get(helper_fn, st, lang, rng) + "(" + x + ", " + k + ")"
                                               : b.op(st, b.op(st, x, "%", k), "==", "0");
            out.stmts.push_back(b.decl(s, "0", st));
            out.stmts.push_back(b.foreach_(x, a, {b.if_(cond, {b.aug(s, "+=", x, st)})}));
            out.result = s;
            out.comment = "Sum the values divisible by k";
            break;
        }
        case count_while: {
            const std::string m = names.get(rem, st, lang, rng);
            const std::string c = names.get(cnt, st, lang, rng);
            out.stmts.push_back(b.decl(m, b.len(a), st));
            out.stmts.push_back(b.decl(c, "0", st));
            out.stmts.push_back(b.while_(b.op(st, m, ">", "0"),
                                         {b.aug(m, b.py() ? "//=" : "/=", "2", st), b.aug(c, "+=", "1", st)}));
            out.result = c;
            out.comment = "Count how many times the size can be halved";
            break;
        }
        case build_list: {
            const std::string r = names.get(res, st, lang, rng);
            const std::string i = names.get(idx, st, lang, rng);
            const std::string elem = a + "[" + i + "]";
            out.stmts.push_back(b.decl_list(r));
            out.stmts.push_back(b.for_range(i, "0", b.len(a), st,
                                            {b.if_(b.op(st, elem, ">", k), {b.append(r, b.op(st, elem, "*", "2"))})}));
            out.result = b.py() ? "len(" + r + ")" : (lang == Language::java ? r + ".size()" : "(int) " + r + ".size()");
            out.comment = "Collect doubled values larger than k";
            break;
        }
        case max_track: {
            const std::string m = names.get(best, st, lang, rng);
            const std::string y = names.get(item2, st, lang, rng);
            out.stmts.push_back(b.decl(m, a + "[0]", st));
            out.stmts.push_back(b.foreach_(y, a, {b.if_(b.op(st, y, ">", m), {b.assign(m, y, st)})}));
            out.result = m;
            out.comment = "Track the largest value";
            break;
        }
        case pair_loop: {
            const std::string p = names.get(pairs, st, lang, rng);
            const std::string i = names.get(idx, st, lang, rng);
            const std::string j = names.get(jdx, st, lang, rng);
            const std::string sum = b.op(st, a + "[" + i + "]", "+", a + "[" + j + "]");
            const std::string cond = b.op(st, "(" + sum + ")" + (chance(rng, st.p_spaced) ? " % " : "%") + k, "==", "0");
            out.stmts.push_back(b.decl(p, "0", st));
            out.stmts.push_back(b.for_range(i, "0", b.len(a), st,
                                            {b.for_range(j, b.op(st, i, "+", "1"), b.len(a), st,
                                                         {b.if_(cond, {b.aug(p, "+=", "1", st)})})}));
            out.result = p;
            out.comment = "Count pairs whose sum is divisible by k";
            break;
        }
        case parity_flag: {
            const std::string f = names.get(parity, st, lang, rng);
            const std::string c = b.op(st, b.op(st, b.len(a), "%", "2"), "==", "0");
            if (st.human && chance(rng, 0.5)) {
                out.stmts.push_back(b.decl(f, "0", st));
                out.stmts.push_back(b.if_(c, {b.assign(f, "1", st)}));
            } else {
                out.stmts.push_back(b.decl(f, b.ternary(c, "1", "0"), st));
            }
            out.result = f;
            out.comment = "Flag even-length input";
            break;
        }
        case snippet_count: break;
    }
    return out;
}

std::string render_lines(const std::vector<Line>& lines, const std::vector<int>& indent_of_line) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].blank) {
            out += '\n';
            continue;
        }
        out += std::string(static_cast<std::size_t>(lines[i].depth * indent_of_line[i]), ' ');
        out += lines[i].text;
        out += '\n';
    }
    return out;
}

}  // namespace

Program render_program(Language lang, std::optional<Generator> author, Rng& rng, int human_blocks) {
    const Style human = human_style(lang, rng);
    const Style machine = generator_style(author.value_or(Generator::gpt4o), rng);
    const bool hybrid = author.has_value() && human_blocks >= 0;
    // A hybrid with no human blocks is a full rewrite.
    const Style& head = !author ? human : (hybrid && human_blocks > 0 ? human : machine);

    Builder b(lang, rng);
    Names names;
    std::vector<Line> lines;
    std::vector<int> indents;
    auto push = [&](std::vector<Line> ls, const Style& st) {
        for (auto& l : ls) {
            lines.push_back(std::move(l));
            indents.push_back(st.indent);
        }
    };
    auto blank = [&](const Style& st) {
        Line l;
        l.blank = true;
        l.human = st.human;
        lines.push_back(l);
        indents.push_back(st.indent);
    };
    auto stmt_lines = [&](const Stmt& s, int depth, const Style& st) {
        std::vector<Line> out;
        b.emit(out, s, depth, st);
        return out;
    };

    const int max_blocks = author && !hybrid ? pick_int(rng, 3, 6) : pick_int(rng, 2, 5);
    std::vector<int> kinds(snippet_count);
    for (int i = 0; i < snippet_count; ++i) kinds[static_cast<std::size_t>(i)] = i;
    shuffle(std::span<int>(kinds), rng);
    kinds.resize(static_cast<std::size_t>(max_blocks));
    const int n_human = !author ? max_blocks : (hybrid ? std::min(human_blocks, max_blocks - 1) : 0);

    const std::string a = names.get(arr, head, lang, rng);
    const std::string k = names.get(kparam, head, lang, rng);
    const std::string f = names.get(fn, head, lang, rng);
    bool needs_helper = false;
    std::vector<Block> blocks;
    for (int i = 0; i < max_blocks; ++i) {
        const Style& st = i < n_human ? human : machine;
        blocks.push_back(make_block(static_cast<Snippet>(kinds[static_cast<std::size_t>(i)]), b, names, st, head, lang, rng));
        if (st.helper && kinds[static_cast<std::size_t>(i)] == sum_if) needs_helper = true;
    }
    const std::string helper = needs_helper ? names.get(helper_fn, machine, lang, rng) : "";
    const Style& tail = n_human < max_blocks ? machine : human;

    // Preamble.
    int depth = 0;
    if (lang == Language::java) {
        push({{0, "import java.util.*;", head.human, false, false}}, head);
        if (!head.human || chance(rng, 0.5)) blank(head);
        push({{0, head.human ? "public class Main {" : "public class Solution {", head.human, false, false}}, head);
        depth = 1;
    } else if (lang == Language::cpp) {
        if (head.human) {
            push({{0, "#include <bits/stdc++.h>", true, false, false}, {0, "using namespace std;", true, false, false}}, head);
        } else {
            push({{0, "#include <iostream>", false, false, false}, {0, "#include <vector>", false, false, false}}, head);
            blank(head);
            push({{0, "using namespace std;", false, false, false}}, head);
        }
        blank(head);
    }

    if (!helper.empty()) {
        const std::string v = lang == Language::python ? "value" : "value";
        const std::string cond = b.op(machine, b.op(machine, v, "%", k), "==", "0");
        if (lang == Language::python) {
            push({{depth, "def " + helper + "(" + v + ", " + k + "):", false, false, false},
                  {depth + 1, "return " + cond, false, false, false}},
                 machine);
        } else {
            const std::string sig = lang == Language::java ? "private static boolean " : "bool ";
            push({{depth, sig + helper + "(int " + v + ", int " + k + ") {", false, false, false},
                  {depth + 1, "return " + cond + ";", false, false, false},
                  {depth, "}", false, false, false}},
                 machine);
        }
        blank(machine);
    }

    // Function header.
    switch (lang) {
        case Language::python:
            if (head.type_hints) {
                push({{depth, "def " + f + "(" + a + ": list[int], " + k + ": int) -> int:", head.human, false, false}}, head);
            } else {
                push({{depth, "def " + f + "(" + a + ", " + k + "):", head.human, false, false}}, head);
            }
            if (head.docstring) {
                push({{depth + 1, "\"\"\"Return a summary statistic of the input values.\"\"\"", false, true, false}}, head);
            }
            break;
        case Language::java:
            if (head.allman) {
                push({{depth, "public static int " + f + "(int[] " + a + ", int " + k + ")", head.human, false, false},
                      {depth, "{", head.human, false, false}},
                     head);
            } else {
                push({{depth, "public static int " + f + "(int[] " + a + ", int " + k + ") {", head.human, false, false}},
                     head);
            }
            break;
        default:
            if (head.allman) {
                push({{depth, "int " + f + "(vector<int>& " + a + ", int " + k + ")", head.human, false, false},
                      {depth, "{", head.human, false, false}},
                     head);
            } else {
                push({{depth, "int " + f + "(vector<int>& " + a + ", int " + k + ") {", head.human, false, false}}, head);
            }
            if (!head.human && chance(rng, 0.3)) {
                // block comment for the stripper to remove
                lines.insert(lines.end() - 1, {depth, "/* Computes a summary of the values. */", false, true, false});
                indents.push_back(head.indent);
            }
            break;
    }

    std::vector<std::string> parts;
    for (int i = 0; i < max_blocks; ++i) {
        const Style& st = i < n_human ? human : machine;
        const Block& blk = blocks[static_cast<std::size_t>(i)];
        if (i > 0 && chance(rng, st.p_blank)) blank(st);
        if (chance(rng, st.p_comment)) push(stmt_lines(b.comment(blk.comment), depth + 1, st), st);
        for (const auto& s : blk.stmts) push(stmt_lines(s, depth + 1, st), st);
        parts.push_back(blk.result);
    }
    std::string total = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) total = b.op(tail, total, "+", parts[i]);
    if (chance(rng, tail.p_blank)) blank(tail);
    push(stmt_lines(b.ret(total), depth + 1, tail), tail);
    if (lang != Language::python) push({{depth, "}", head.human, false, false}}, head);

    // Driver.
    blank(head);
    switch (lang) {
        case Language::python:
            if (head.human) {
                const std::string n = a == "n" ? "n2" : "n";
                push({{0, n + ", " + k + " = map(int, input().split())", true, false, false},
                      {0, a + " = list(map(int, input().split()))", true, false, false},
                      {0, "print(" + f + "(" + a + ", " + k + "))", true, false, false}},
                     head);
            } else {
                push({{0, "if __name__ == \"__main__\":", false, false, false},
                      {1, a + " = [3, 6, 9, 12, 15]", false, false, false},
                      {1, "print(" + f + "(" + a + ", 3))", false, false, false}},
                     head);
            }
            break;
        case Language::java:
            if (head.human) {
                push({{1, "public static void main(String[] args) {", true, false, false},
                      {2, "Scanner sc = new Scanner(System.in);", true, false, false},
                      {2, "int n = sc.nextInt();", true, false, false},
                      {2, "int " + k + " = sc.nextInt();", true, false, false},
                      {2, "int[] " + a + " = new int[n];", true, false, false},
                      {2, "for (int q = 0; q < n; q++) " + a + "[q] = sc.nextInt();", true, false, false},
                      {2, "System.out.println(" + f + "(" + a + ", " + k + "));", true, false, false},
                      {1, "}", true, false, false},
                      {0, "}", true, false, false}},
                     head);
            } else {
                push({{1, "public static void main(String[] args) {", false, false, false},
                      {2, "int[] " + a + " = {3, 6, 9, 12, 15};", false, false, false},
                      {2, "System.out.println(" + f + "(" + a + ", 3));", false, false, false},
                      {1, "}", false, false, false},
                      {0, "}", false, false, false}},
                     head);
            }
            break;
        default:
            if (head.human) {
                push({{0, "int main() {", true, false, false},
                      {1, "int n, " + k + ";", true, false, false},
                      {1, "cin >> n >> " + k + ";", true, false, false},
                      {1, "vector<int> " + a + "(n);", true, false, false},
                      {1, "for (auto &q : " + a + ") cin >> q;", true, false, false},
                      {1, "cout << " + f + "(" + a + ", " + k + ") << endl;", true, false, false},
                      {0, "}", true, false, false}},
                     head);
            } else {
                push({{0, "int main() {", false, false, false},
                      {1, "vector<int> " + a + " = {3, 6, 9, 12, 15};", false, false, false},
                      {1, "cout << " + f + "(" + a + ", 3) << endl;", false, false, false},
                      {1, "return 0;", false, false, false},
                      {0, "}", false, false, false}},
                     head);
            }
            break;
    }

    Program p;
    p.code = render_lines(lines, indents);
    for (const auto& l : lines) {
        if (l.blank || l.comment) continue;
        ++p.code_lines;
        if (l.human) ++p.human_lines;
    }
    return p;
}

namespace {

Source pick_source(Language lang, Rng& rng) {
    static const std::vector<Source> py{Source::leetcode, Source::codeforces, Source::github, Source::mbpp,
                                        Source::thevault};
    static const std::vector<Source> other{Source::leetcode, Source::codeforces, Source::github, Source::thevault};
    return lang == Language::python ? pick(rng, py) : pick(rng, other);
}

CodeSample make_sample(Language lang, std::optional<Generator> g, Rng& rng) {
    CodeSample s;
    Program p = render_program(lang, g, rng);
    s.code = std::move(p.code);
    s.id = content_id(s.code);
    s.language = lang;
    s.source = pick_source(lang, rng);
    s.label = g ? Label::llm : Label::human;
    if (g) s.generator = GeneratorTag(*g);
    return s;
}

}  // namespace

std::vector<CodeSample> make_corpus(std::size_t total, const CorpusSpec& spec) {
    Rng rng(spec.seed);
    std::vector<CodeSample> out;
    std::set<std::string> seen;
    const std::size_t per_lang = total / spec.languages.size();
    for (std::size_t li = 0; li < spec.languages.size(); ++li) {
        const Language lang = spec.languages[li];
        const std::size_t n = li + 1 == spec.languages.size() ? total - per_lang * li : per_lang;
        const auto humans = static_cast<std::size_t>(std::llround(spec.human_share * static_cast<double>(n)));
        for (std::size_t i = 0; i < n; ++i) {
            std::optional<Generator> g;
            if (i >= humans) g = spec.generators[(i - humans) % spec.generators.size()];
            CodeSample s = make_sample(lang, g, rng);
            while (!seen.insert(s.id).second) s = make_sample(lang, g, rng);
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<CodeSample> make_hybrids(std::size_t total, const CorpusSpec& spec) {
    Rng rng(mix_seed(spec.seed, 77));
    std::vector<CodeSample> out;
    std::set<std::string> seen;
    while (out.size() < total) {
        const Language lang = spec.languages[out.size() % spec.languages.size()];
        const Generator g = spec.generators[(out.size() / spec.languages.size()) % spec.generators.size()];
        const int human_blocks = pick_int(rng, 0, 5);
        Program p = render_program(lang, g, rng, human_blocks);
        CodeSample s;
        s.code = std::move(p.code);
        s.id = content_id(s.code);
        if (!seen.insert(s.id).second) continue;
        s.language = lang;
        s.source = pick_source(lang, rng);
        s.label = Label::hybrid;
        s.generator = GeneratorTag(g);
        s.human_fraction = static_cast<double>(p.human_lines) / static_cast<double>(p.code_lines);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<CodeSample> make_metadata_corpus(std::size_t total, std::uint64_t seed) {
    Rng rng(seed);
    static const std::vector<Language> langs{Language::python, Language::java, Language::cpp};
    static const std::vector<Generator> gens{Generator::gpt4o, Generator::codellama, Generator::llama31,
                                             Generator::codeqwen15, Generator::nxcode};
    std::vector<CodeSample> out;
    out.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        CodeSample s;
        s.code = "x = " + std::to_string(i);
        s.id = "s" + std::to_string(i);
        s.language = pick(rng, langs);
        s.source = pick_source(s.language.value, rng);
        if (chance(rng, 0.5)) {
            s.label = Label::llm;
            s.generator = GeneratorTag(pick(rng, gens));
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace codetect::synth
