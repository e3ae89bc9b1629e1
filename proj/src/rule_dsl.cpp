#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pipetrack/error.hpp"
#include "pipetrack/fis.hpp"

namespace pipetrack::fis {

namespace {

// Kept byte-identical to data/default.rules; a test compares the two.
constexpr std::string_view kDefaultRules = R"RULES(# Pipeline-following steering controller.
#
# Inputs (all on [0.1, 1.0]):
#   x1..x4  pipe coverage of the upper-left, upper-right, lower-left and
#           lower-right quadrants of an image band    {Small, Medium, Large}
#   x5      far-end location across the band          {Left, Center, Right}
#   x6      near-end location across the band         {Left, Center, Right}
# Output y1 on [0, 180]: steering set point, 90 = straight ahead.
#
# The list is mirror symmetric: every left-biased rule has a right-biased twin.

# Where the pipe lies across the band.
IF x5 IS Left AND x6 IS Left THEN y1 IS TurnLeft
IF x5 IS Right AND x6 IS Right THEN y1 IS TurnRight
IF x5 IS Left AND x6 IS Center THEN y1 IS TurnLeft
IF x5 IS Right AND x6 IS Center THEN y1 IS TurnRight
IF x5 IS Left AND x6 IS Right THEN y1 IS TurnLeft
IF x5 IS Right AND x6 IS Left THEN y1 IS TurnRight

# Lateral imbalance between the left and right quadrants.
IF x1 IS Large AND x2 IS Small THEN y1 IS TurnLeft
IF x2 IS Large AND x1 IS Small THEN y1 IS TurnRight
IF x3 IS Large AND x4 IS Small THEN y1 IS TurnLeft
IF x4 IS Large AND x3 IS Small THEN y1 IS TurnRight
IF x1 IS Medium AND x2 IS Small AND x3 IS Medium AND x4 IS Small THEN y1 IS TurnLeft
IF x2 IS Medium AND x1 IS Small AND x4 IS Medium AND x3 IS Small THEN y1 IS TurnRight

# On track.
IF x5 IS Center AND x6 IS Center THEN y1 IS GoStraight

# Term shapes: gaussian(sigma, centre) or pi(half-width, centre).
term.x1.Small = gaussian(0.19, 0.1)
term.x1.Medium = gaussian(0.19, 0.55)
term.x1.Large = gaussian(0.19, 1)
term.x2.Small = gaussian(0.19, 0.1)
term.x2.Medium = gaussian(0.19, 0.55)
term.x2.Large = gaussian(0.19, 1)
term.x3.Small = gaussian(0.19, 0.1)
term.x3.Medium = gaussian(0.19, 0.55)
term.x3.Large = gaussian(0.19, 1)
term.x4.Small = gaussian(0.19, 0.1)
term.x4.Medium = gaussian(0.19, 0.55)
term.x4.Large = gaussian(0.19, 1)
term.x5.Left = gaussian(0.19, 0.1)
term.x5.Center = gaussian(0.19, 0.55)
term.x5.Right = gaussian(0.19, 1)
term.x6.Left = gaussian(0.19, 0.1)
term.x6.Center = gaussian(0.19, 0.55)
term.x6.Right = gaussian(0.19, 1)
term.y1.TurnLeft = pi(60, 30)
term.y1.GoStraight = pi(60, 90)
term.y1.TurnRight = pi(60, 150)
)RULES";

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) words.push_back(s.substr(start, i - start));
    }
    return words;
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

class Parser {
public:
    Parser(const std::string &source) : source_(source), inputs_(default_inputs()), output_(default_output()) {}

    void line(std::string_view raw, int number) {
        number_ = number;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view text = trim(raw);
        if (text.empty()) return;
        if (text.starts_with("term.")) {
            term_override(text);
        } else {
            rule(text);
        }
    }

    RuleBase finish() {
        try {
            return RuleBase(std::move(inputs_), std::move(output_), std::move(rules_));
        } catch (const InvalidParameter &e) {
            throw ParseError(source_, 0, e.what());
        }
    }

private:
    [[noreturn]] void fail(const std::string &message) const { throw ParseError(source_, number_, message); }

    int input_slot(std::string_view name) const {
        for (int i = 0; i < kInputCount; ++i) {
            if (inputs_[static_cast<std::size_t>(i)].name() == name) return i;
        }
        throw UnknownVariable(source_, number_, "unknown variable '" + std::string(name) + "'");
    }

    int term_of(const LinguisticVariable &var, std::string_view name) const {
        const int index = var.term_index(name);
        if (index < 0) {
            throw UnknownTerm(source_, number_,
                              "unknown term '" + std::string(name) + "' for variable " + var.name());
        }
        return index;
    }

    void rule(std::string_view text) {
        const auto w = split_words(text);
        if (w.empty() || w[0] != "IF") fail("expected a rule starting with IF");
        if (w.size() > 1 && w[1] == "THEN") {
            throw EmptyAntecedent(source_, number_, "rule has no condition before THEN");
        }
        Rule r;
        std::size_t i = 1;
        std::array<bool, kInputCount> seen{};
        while (true) {
            if (i + 3 > w.size() || w[i + 1] != "IS") fail("expected '<variable> IS <Term>'");
            const int slot = input_slot(w[i]);
            if (seen[static_cast<std::size_t>(slot)]) fail("variable " + std::string(w[i]) + " appears twice");
            seen[static_cast<std::size_t>(slot)] = true;
            r.antecedents.push_back({slot, term_of(inputs_[static_cast<std::size_t>(slot)], w[i + 2])});
            i += 3;
            if (i < w.size() && w[i] == "AND") {
                ++i;
                continue;
            }
            break;
        }
        if (i >= w.size() || w[i] != "THEN") fail("expected THEN");
        if (i + 4 != w.size() || w[i + 2] != "IS") fail("expected 'THEN y1 IS <Term>'");
        if (w[i + 1] != output_.name()) {
            throw UnknownVariable(source_, number_, "unknown output variable '" + std::string(w[i + 1]) + "'");
        }
        r.consequent = term_of(output_, w[i + 3]);
        rules_.push_back(std::move(r));
    }

    // term.<var>.<Term> = gaussian(sigma, c) | pi(b, c)
    void term_override(std::string_view text) {
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) fail("expected '=' in term definition");
        const std::string_view key = trim(text.substr(0, eq));
        const std::string_view value = trim(text.substr(eq + 1));
        const std::string_view path = key.substr(5);
        const auto dot = path.find('.');
        if (dot == std::string_view::npos) fail("expected term.<variable>.<Term>");
        const std::string_view var_name = path.substr(0, dot);
        const std::string_view term_name = path.substr(dot + 1);

        LinguisticVariable *var = nullptr;
        if (var_name == output_.name()) {
            var = &output_;
        } else {
            var = &inputs_[static_cast<std::size_t>(input_slot(var_name))];
        }
        const int term = term_of(*var, term_name);

        const auto open = value.find('(');
        if (open == std::string_view::npos || value.back() != ')') fail("expected <kind>(<width>, <centre>)");
        const std::string_view kind = trim(value.substr(0, open));
        const std::string_view args = value.substr(open + 1, value.size() - open - 2);
        const auto comma = args.find(',');
        if (comma == std::string_view::npos) fail("expected two parameters");
        const auto width = parse_number(args.substr(0, comma));
        const auto center = parse_number(args.substr(comma + 1));
        if (!width || !center) fail("malformed number in term definition");

        MembershipFunction mf;
        if (kind == "gaussian") {
            mf.kind = MembershipKind::gaussian;
        } else if (kind == "pi") {
            mf.kind = MembershipKind::pi;
        } else {
            fail("unknown membership kind '" + std::string(kind) + "'");
        }
        mf.width = *width;
        mf.center = *center;
        try {
            var->set_membership(term, mf);
        } catch (const InvalidParameter &e) {
            fail(e.what());
        }
    }

    std::string source_;
    int number_ = 0;
    std::array<LinguisticVariable, kInputCount> inputs_;
    LinguisticVariable output_;
    std::vector<Rule> rules_;
};

void print_terms(std::ostringstream &out, const LinguisticVariable &var) {
    for (const Term &t : var.terms()) {
        out << "term." << var.name() << '.' << t.name << " = "
            << (t.mf.kind == MembershipKind::gaussian ? "gaussian" : "pi") << '('
            << format_number(t.mf.width) << ", " << format_number(t.mf.center) << ")\n";
    }
}

}  // namespace

std::string_view default_rulebase_text() { return kDefaultRules; }

RuleBase parse_rulebase(std::string_view text, const std::string &source) {
    Parser parser(source);
    int number = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = text.substr(0, nl);
        parser.line(line, ++number);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return parser.finish();
}

RuleBase load_rulebase(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "cannot open rule file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rulebase(buf.str(), path);
}

std::string print_rulebase(const RuleBase &rb) {
    std::ostringstream out;
    for (const Rule &rule : rb.rules()) {
        out << "IF ";
        for (std::size_t i = 0; i < rule.antecedents.size(); ++i) {
            const Antecedent &a = rule.antecedents[i];
            if (i > 0) out << " AND ";
            out << rb.input(a.variable).name() << " IS " << rb.input(a.variable).term(a.term).name;
        }
        out << " THEN " << rb.output().name() << " IS " << rb.output().term(rule.consequent).name << '\n';
    }
    out << '\n';
    for (int i = 0; i < kInputCount; ++i) print_terms(out, rb.input(i));
    print_terms(out, rb.output());
    return out.str();
}

}  // namespace pipetrack::fis
