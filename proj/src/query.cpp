#include "stpq/query.hpp"

#include <cctype>
#include <sstream>

namespace stpq {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw ParseError("query: expected '" + std::string(1, c) + "' at column " +
                             std::to_string(pos + 1));
    }
    long long number() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && s[pos] == '-') ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start)
            throw ParseError("query: expected number at column " + std::to_string(pos + 1));
        return std::stoll(s.substr(start, pos - start));
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
};

CellId parse_cell(Cursor& cur) {
    cur.expect('(');
    auto col = cur.number();
    cur.expect(',');
    auto row = cur.number();
    cur.expect(')');
    if (col < 0 || row < 0) throw ParseError("query: negative cell coordinate");
    return {static_cast<std::uint32_t>(col), static_cast<std::uint32_t>(row)};
}

}  // namespace

StpQuery parse_query_line(const std::string& line) {
    Cursor cur{line};
    cur.skip_ws();
    StpQuery query;
    if (line.compare(cur.pos, 5, "TIME ") == 0) {
        query.variant = QueryVariant::WithTime;
        cur.pos += 5;
    } else if (line.compare(cur.pos, 6, "ORDER ") == 0) {
        query.variant = QueryVariant::WithOrder;
        cur.pos += 6;
    } else {
        throw ParseError("query: line must start with TIME or ORDER");
    }
    for (;;) {
        Predicate p;
        p.cell = parse_cell(cur);
        if (query.variant == QueryVariant::WithTime) {
            cur.expect('@');
            if (cur.eat('[')) {
                auto t1 = cur.number();
                cur.expect(',');
                auto t2 = cur.number();
                cur.expect(']');
                p.constraint = TemporalConstraint::between(t1, t2);
            } else {
                p.constraint = TemporalConstraint::instant(cur.number());
            }
        }
        query.predicates.push_back(p);
        if (cur.done()) break;
        cur.expect(';');
    }
    if (query.predicates.empty()) throw ParseError("query: no predicates");
    return query;
}

std::string format_query(const StpQuery& query) {
    std::ostringstream os;
    os << (query.variant == QueryVariant::WithTime ? "TIME " : "ORDER ");
    for (std::size_t i = 0; i < query.predicates.size(); ++i) {
        const auto& p = query.predicates[i];
        if (i) os << " ; ";
        os << '(' << p.cell.col << ',' << p.cell.row << ')';
        if (query.variant == QueryVariant::WithTime) {
            if (p.constraint.interval)
                os << "@[" << p.constraint.lo << ',' << p.constraint.hi << ']';
            else
                os << '@' << p.constraint.lo;
        }
    }
    return os.str();
}

std::string format_result(const std::vector<ObjectId>& objects, std::uint64_t reads) {
    std::ostringstream os;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (i) os << ',';
        os << 'O' << objects[i];
    }
    if (!objects.empty()) os << ' ';
    os << "io=" << reads;
    return os.str();
}

}  // namespace stpq
