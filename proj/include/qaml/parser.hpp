// Copyright 2026 The qaml Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Line-oriented circuit language.
 *
 *     program := "qubits" INT NEWLINE stmt*
 *     stmt    := ("h"|"x"|"y"|"z") INT
 *              | ("rx"|"ry"|"rz") INT ANGLE
 *              | "cx" INT INT                  # control target
 *              | "measure" "all"
 *
 * Keywords are case-insensitive, '#' starts a comment, blank lines are
 * ignored. ANGLE is a decimal literal or a pi expression such as "pi",
 * "-pi/4", "3*pi/2". Ansatz templates additionally accept parameter slots
 * "p0", "p1", ... wherever an ANGLE may appear.
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "qaml/circuit.hpp"
#include "qaml/errors.hpp"
#include "qaml/gates.hpp"
#include "qaml/hybrid.hpp"
#include "qaml/qstate.hpp"

namespace qaml {

struct SourceProgram {
    std::string text;
    std::string origin = "<stdin>";
};

inline constexpr std::size_t kMaxSourceLines = 1'000'000;

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column; // 1-based
};

[[nodiscard]] inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

[[nodiscard]] inline std::vector<Token> tokenize(std::string_view line) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
    }
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) {
            tokens.push_back({line.substr(start, i - start), start + 1});
        }
    }
    return tokens;
}

[[nodiscard]] inline std::optional<std::size_t> parse_uint(std::string_view s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(),
                                  [](unsigned char c) { return std::isdigit(c) != 0; })) {
        return std::nullopt;
    }
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

[[nodiscard]] inline std::optional<double> parse_plain_number(std::string_view s) {
    if (s.empty()) return std::nullopt;
    // Only digits, '.', and an exponent; rejects "inf", "nan" and hex forms.
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
              c == '+' || c == '-')) {
            return std::nullopt;
        }
    }
    if (!std::isdigit(static_cast<unsigned char>(s.front())) && s.front() != '.') {
        return std::nullopt;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

/// NUMBER | "pi" | NUMBER "*" "pi"
[[nodiscard]] inline std::optional<double> parse_angle_term(std::string_view s) {
    const std::string low = lower(s);
    if (low == "pi") return std::numbers::pi;
    if (low.size() > 3 && low.ends_with("*pi")) {
        const auto k = parse_plain_number(std::string_view(low).substr(0, low.size() - 3));
        if (!k) return std::nullopt;
        return *k * std::numbers::pi;
    }
    return parse_plain_number(low);
}

} // namespace detail

/// Parses an angle literal: [sign] term ["/" NUMBER].
[[nodiscard]] inline std::optional<double> parse_angle(std::string_view text) {
    double sign = 1.0;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        sign = text.front() == '-' ? -1.0 : 1.0;
        text.remove_prefix(1);
    }
    const auto slash = text.find('/');
    const auto term = detail::parse_angle_term(text.substr(0, slash));
    if (!term) return std::nullopt;
    double value = *term;
    if (slash != std::string_view::npos) {
        const auto denom = detail::parse_plain_number(text.substr(slash + 1));
        if (!denom || *denom == 0.0) return std::nullopt;
        value /= *denom;
    }
    value *= sign;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

namespace detail {

struct ParsedProgram {
    std::size_t n_qubits = 0;
    std::vector<TemplateOp> ops;
    bool measure_all = false;
};

class LineParser {
  public:
    LineParser(const SourceProgram &program, bool allow_slots)
        : program_(program), allow_slots_(allow_slots) {}

    ParsedProgram run() {
        std::string_view text = program_.text;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t nl = text.find('\n', pos);
            const std::string_view line =
                text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            ++line_no;
            if (line_no > kMaxSourceLines) {
                fail(line_no, 1, "program exceeds " + std::to_string(kMaxSourceLines) + " lines", "");
            }
            parse_line(line_no, line);
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
        if (!header_seen_) {
            fail(1, 1, "missing \"qubits\" header", "");
        }
        return std::move(result_);
    }

  private:
    [[noreturn]] void fail(std::size_t line, std::size_t column, std::string message,
                           std::string_view token) const {
        throw ParseError(line, column, std::move(message), std::string(token), program_.origin);
    }

    void expect_count(std::size_t line_no, std::string_view line, const std::vector<Token> &toks,
                      std::size_t expected) const {
        if (toks.size() < expected) {
            const Token &last = toks.back();
            const std::size_t end = std::min(last.column + last.text.size(), line.size() + 1);
            fail(line_no, end, "missing operand after '" + std::string(last.text) + "'", "");
        }
        if (toks.size() > expected) {
            fail(line_no, toks[expected].column, "unexpected token", toks[expected].text);
        }
    }

    std::size_t qubit_index(std::size_t line_no, const Token &tok) const {
        const auto idx = parse_uint(tok.text);
        if (!idx) {
            fail(line_no, tok.column, "malformed qubit index", tok.text);
        }
        if (*idx >= result_.n_qubits) {
            fail(line_no, tok.column,
                 "index >= declared qubits (" + std::to_string(*idx) +
                     " >= " + std::to_string(result_.n_qubits) + ")",
                 tok.text);
        }
        return *idx;
    }

    AngleExpr angle(std::size_t line_no, const Token &tok) const {
        if (allow_slots_ && tok.text.size() > 1 && (tok.text[0] == 'p' || tok.text[0] == 'P') &&
            lower(tok.text) != "pi") {
            if (const auto slot = parse_uint(tok.text.substr(1))) {
                return ParamSlot{*slot};
            }
        }
        const auto value = parse_angle(tok.text);
        if (!value) {
            fail(line_no, tok.column, "malformed angle", tok.text);
        }
        return *value;
    }

    void parse_line(std::size_t line_no, std::string_view line) {
        const std::vector<Token> toks = tokenize(line);
        if (toks.empty()) return;
        const Token &head = toks.front();
        const std::string keyword = lower(head.text);

        if (keyword == "qubits") {
            if (header_seen_) {
                fail(line_no, head.column, "duplicate \"qubits\" header", head.text);
            }
            expect_count(line_no, line, toks, 2);
            const auto n = parse_uint(toks[1].text);
            if (!n) {
                fail(line_no, toks[1].column, "malformed qubit count", toks[1].text);
            }
            if (*n == 0 || *n > kDefaultMaxQubits) {
                fail(line_no, toks[1].column,
                     "qubit count must be in [1, " + std::to_string(kDefaultMaxQubits) + "]",
                     toks[1].text);
            }
            header_seen_ = true;
            result_.n_qubits = *n;
            return;
        }
        if (!header_seen_) {
            fail(line_no, head.column, "statement before \"qubits\" header", head.text);
        }
        if (keyword == "measure") {
            expect_count(line_no, line, toks, 2);
            if (lower(toks[1].text) != "all") {
                fail(line_no, toks[1].column, "expected \"all\"", toks[1].text);
            }
            result_.measure_all = true;
            return;
        }
        const auto gate = gate_name_from_string(keyword);
        if (!gate) {
            fail(line_no, head.column, "unknown mnemonic", head.text);
        }
        if (result_.measure_all) {
            fail(line_no, head.column, "gate after \"measure all\"", head.text);
        }
        TemplateOp op{*gate, {}, std::nullopt};
        if (*gate == GateName::CX) {
            expect_count(line_no, line, toks, 3);
            const std::size_t control = qubit_index(line_no, toks[1]);
            const std::size_t target = qubit_index(line_no, toks[2]);
            if (control == target) {
                fail(line_no, toks[2].column, "control and target must differ", toks[2].text);
            }
            op.targets = {control, target};
        } else if (is_rotation(*gate)) {
            expect_count(line_no, line, toks, 3);
            op.targets = {qubit_index(line_no, toks[1])};
            op.angle = angle(line_no, toks[2]);
        } else {
            expect_count(line_no, line, toks, 2);
            op.targets = {qubit_index(line_no, toks[1])};
        }
        result_.ops.push_back(std::move(op));
    }

    const SourceProgram &program_;
    bool allow_slots_;
    bool header_seen_ = false;
    ParsedProgram result_;
};

} // namespace detail

/// Parses a concrete circuit. Throws ParseError.
[[nodiscard]] inline Circuit parse(const SourceProgram &program) {
    detail::ParsedProgram parsed = detail::LineParser(program, false).run();
    Circuit circuit{parsed.n_qubits, {}, parsed.measure_all};
    circuit.ops.reserve(parsed.ops.size());
    for (auto &op : parsed.ops) {
        std::optional<double> angle;
        if (op.angle) angle = std::get<double>(*op.angle);
        circuit.ops.push_back({op.gate, std::move(op.targets), angle});
    }
    return circuit;
}

[[nodiscard]] inline Circuit parse(std::string_view text) {
    return parse(SourceProgram{std::string(text), "<input>"});
}

/// Parses an ansatz template whose angles may be slots p0, p1, ...
[[nodiscard]] inline AnsatzTemplate parse_template(const SourceProgram &program) {
    detail::ParsedProgram parsed = detail::LineParser(program, true).run();
    return AnsatzTemplate(parsed.n_qubits, std::move(parsed.ops));
}

[[nodiscard]] inline AnsatzTemplate parse_template(std::string_view text) {
    return parse_template(SourceProgram{std::string(text), "<input>"});
}

/// Shortest decimal text that parses back to exactly `value`.
[[nodiscard]] inline std::string format_angle(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

namespace detail {
inline void print_op(std::string &out, GateName gate, const std::vector<std::size_t> &targets,
                     const std::optional<std::string> &angle) {
    out += lower(to_string(gate));
    for (std::size_t t : targets) {
        out += ' ';
        out += std::to_string(t);
    }
    if (angle) {
        out += ' ';
        out += *angle;
    }
    out += '\n';
}
} // namespace detail

/// DSL text for `circuit`; parse(to_dsl(c)) == c.
[[nodiscard]] inline std::string to_dsl(const Circuit &circuit) {
    std::string out = "qubits " + std::to_string(circuit.n_qubits) + "\n";
    for (const CircuitOp &op : circuit.ops) {
        detail::print_op(out, op.gate, op.targets,
                         op.angle ? std::optional<std::string>(format_angle(*op.angle))
                                  : std::nullopt);
    }
    if (circuit.measure_all) out += "measure all\n";
    return out;
}

[[nodiscard]] inline std::string to_dsl(const AnsatzTemplate &tmpl) {
    std::string out = "qubits " + std::to_string(tmpl.n_qubits()) + "\n";
    for (const TemplateOp &op : tmpl.ops()) {
        std::optional<std::string> angle;
        if (op.angle) {
            if (const auto *slot = std::get_if<ParamSlot>(&*op.angle)) {
                angle = "p" + std::to_string(slot->index);
            } else {
                angle = format_angle(std::get<double>(*op.angle));
            }
        }
        detail::print_op(out, op.gate, op.targets, angle);
    }
    return out;
}

} // namespace qaml
