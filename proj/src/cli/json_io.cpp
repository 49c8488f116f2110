#include "k3lat/json_io.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace k3lat::io {

ParseError::ParseError(const std::string& what, std::size_t l, std::size_t c)
    : InvalidInput(what), line(l), column(c)
{
}

json parse_json(const std::string& text, const std::string& source_name)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points at or one past the offending character.
        std::size_t pos = e.byte == 0 ? 0 : e.byte - 1;
        pos = std::min(pos, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        auto colon = msg.rfind(": ");
        if (colon != std::string::npos)
            msg = msg.substr(colon + 2);
        throw ParseError(source_name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg,
                         line, col);
    }
}

json load_json_arg(const std::string& arg)
{
    std::size_t i = arg.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && (arg[i] == '[' || arg[i] == '{'))
        return parse_json(arg, "<inline>");
    std::stringstream buf;
    if (arg == "-") {
        buf << std::cin.rdbuf();
        return parse_json(buf.str(), "<stdin>");
    }
    std::ifstream in(arg);
    if (!in)
        throw InvalidInput("cannot open " + arg);
    buf << in.rdbuf();
    return parse_json(buf.str(), arg);
}

json to_json(const Integer& x)
{
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return to_int64(x);
    return to_string(x);
}

json to_json(const Rational& x)
{
    return to_string(x);
}

json to_json(const IntVector& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

json to_json(const IntMatrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        a.push_back(row);
    }
    return a;
}

json to_json(const MukaiVector& v)
{
    return {{"a", to_json(v.a)}, {"D", to_json(v.D)}, {"c", to_json(v.c)}};
}

json to_json(const DiscriminantForm& a)
{
    json orders = json::array(), q = json::array();
    for (const auto& o : a.orders())
        orders.push_back(to_json(o));
    for (const auto& x : a.q_values())
        q.push_back(to_json(x));
    json b = json::array();
    const RatMatrix bm = a.b_matrix();
    for (std::size_t i = 0; i < bm.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < bm.cols(); ++j)
            row.push_back(to_json(bm(i, j)));
        b.push_back(row);
    }
    return {{"orders", orders}, {"q", q}, {"b", b}, {"order", to_json(a.order())}};
}

json to_json(const FiniteSubgroup& h)
{
    json gens = json::array(), orders = json::array();
    for (const auto& g : h.generators())
        gens.push_back(to_json(g));
    for (const auto& o : h.generator_orders())
        orders.push_back(to_json(o));
    return {{"order", to_json(h.order())}, {"generators", gens}, {"generator_orders", orders}};
}

json to_json(const GluingData& g)
{
    json images = json::array();
    for (const auto& y : g.gamma.images)
        images.push_back(to_json(y));
    return {{"n", to_json(g.n)}, {"V", to_json(g.V)}, {"W", to_json(g.W)}, {"gamma", images}, {"t", to_json(g.t)}};
}

json to_json(const ExtensionCertificate& c)
{
    return {{"x0", to_json(c.x0)},
            {"y0", to_json(c.y0)},
            {"lambda", to_json(c.lambda)},
            {"m", to_json(c.m)},
            {"new_t", to_json(c.new_t)},
            {"new_generator", to_json(c.new_generator)},
            {"new_generator_q", to_json(c.new_generator_q)}};
}

json columns_json(const SublatticeEmbedding& e)
{
    json cols = json::array();
    for (const auto& c : e.columns())
        cols.push_back(to_json(c));
    return cols;
}

Integer integer_from(const json& j, const std::string& what)
{
    if (j.is_number_unsigned())
        return Integer(j.get<std::uint64_t>());
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_integer(j.get<std::string>());
        } catch (const Error&) {
            throw InvalidInput(what + ": not an integer: " + j.get<std::string>());
        }
    }
    throw InvalidInput(what + ": expected an integer, got " + j.dump());
}

IntVector vector_from(const json& j, const std::string& what)
{
    if (!j.is_array())
        throw InvalidInput(what + ": expected an array");
    IntVector v;
    for (const auto& x : j)
        v.push_back(integer_from(x, what));
    return v;
}

IntMatrix matrix_from(const json& j, const std::string& what)
{
    if (!j.is_array())
        throw InvalidInput(what + ": expected an array of rows");
    std::vector<IntVector> rows;
    for (const auto& r : j)
        rows.push_back(vector_from(r, what));
    const std::size_t n = rows.size(), m = n ? rows[0].size() : 0;
    IntMatrix out(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != m)
            throw InvalidInput(what + ": rows have different lengths");
        for (std::size_t k = 0; k < m; ++k)
            out(i, k) = rows[i][k];
    }
    return out;
}

IntMatrix gram_from(const json& j)
{
    if (j.is_object()) {
        if (!j.contains("gram"))
            throw InvalidInput("lattice object has no \"gram\" field");
        return matrix_from(j.at("gram"), "gram");
    }
    return matrix_from(j, "gram");
}

NeronSeveriData ns_from(const json& j)
{
    IntMatrix g = gram_from(j);
    std::optional<std::size_t> h;
    if (j.is_object() && j.contains("h_index") && !j.at("h_index").is_null()) {
        Integer k = integer_from(j.at("h_index"), "h_index");
        if (k < 0)
            throw InvalidInput("h_index must be nonnegative");
        h = static_cast<std::size_t>(to_int64(k));
    }
    return NeronSeveriData(std::move(g), h);
}

IntVector parse_int_list(const std::string& s)
{
    IntVector out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        out.push_back(parse_integer(b == std::string::npos ? "" : item.substr(b, e - b + 1)));
    }
    if (out.empty())
        throw InvalidInput("empty integer list");
    return out;
}

} // namespace k3lat::io
