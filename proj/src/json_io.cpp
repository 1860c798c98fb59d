#include "normknot/json_io.hpp"

#include <fstream>

namespace normknot {

using nlohmann::json;

Perm perm_from_json(const json& j, std::size_t degree) {
    if (!j.is_array() || j.size() != degree)
        throw std::invalid_argument("perm: expected an image array of length degree");
    std::vector<Point> img(degree);
    for (std::size_t i = 0; i < degree; ++i) {
        long long v = j[i].get<long long>();
        if (v < 1 || v > static_cast<long long>(degree))
            throw std::invalid_argument("perm: images must be 1-based points");
        img[i] = static_cast<Point>(v - 1);
    }
    return Perm(std::move(img));
}

json perm_to_json(const Perm& p) {
    json arr = json::array();
    for (Point v : p.images()) arr.push_back(static_cast<unsigned>(v) + 1);
    return arr;
}

GroupInput group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
        throw std::invalid_argument("group: expected {degree, generators}");
    std::size_t degree = j.at("degree").get<std::size_t>();
    if (degree == 0 || degree > 60000) throw std::invalid_argument("group: bad degree");
    std::vector<Perm> gens;
    for (const json& g : j.at("generators")) gens.push_back(perm_from_json(g, degree));
    GroupInput in;
    in.group = GroupTable::generate(std::move(gens), degree);
    if (j.contains("stabilizer_point")) {
        long long pt = j.at("stabilizer_point").get<long long>();
        if (pt < 1 || pt > static_cast<long long>(degree))
            throw std::invalid_argument("group: stabilizer_point out of range");
        in.stabilizer_point = static_cast<Point>(pt - 1);
    }
    return in;
}

json group_to_json(const GroupTable& g, bool with_order) {
    json out;
    out["degree"] = g.degree();
    json gens = json::array();
    for (const Perm& p : g.generators()) gens.push_back(perm_to_json(p));
    out["generators"] = gens;
    if (with_order) out["order"] = g.order();
    return out;
}

json rep_to_json(const Rep2& rep) {
    json out;
    out["p"] = rep.p;
    out["source"] = group_to_json(rep.source);
    json images = json::array();
    for (const Mat2& m : rep.gen_images)
        images.push_back(json::array({m.e[0], m.e[1], m.e[2], m.e[3]}));
    out["images"] = images;
    return out;
}

Rep2 rep_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("source") || !j.contains("images"))
        throw std::invalid_argument("rep: expected {p, source, images}");
    std::int64_t p = j.at("p").get<std::int64_t>();
    GroupTable source = group_from_json(j.at("source")).group;
    std::vector<Mat2> images;
    for (const json& m : j.at("images")) {
        if (!m.is_array() || m.size() != 4)
            throw std::invalid_argument("rep: each image is [a,b,c,d]");
        images.emplace_back(p, m[0].get<std::int64_t>(), m[1].get<std::int64_t>(),
                            m[2].get<std::int64_t>(), m[3].get<std::int64_t>());
    }
    return Rep2::build(p, std::move(source), std::move(images));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("parse error in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace normknot
