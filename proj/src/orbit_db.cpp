#include "birk/orbit_db.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "birk/error.hpp"

namespace birk {

std::pair<const OrbitRecord*, bool> OrbitDatabase::insert_or_find(const Facet& f,
                                                                  const SymmetryGroup& sym,
                                                                  const VPolytope& p) {
    std::vector<int32_t> key = sym.canonical_image(f.incidence);
    auto it = records_.find(key);
    if (it != records_.end())
        return {&it->second, false};

    OrbitRecord rec;
    rec.key = key;
    Facet rep = facet_from_incidence(p, key);
    rec.normal = std::move(rep.normal);
    rec.rhs = std::move(rep.rhs);
    rec.stabilizer_order = sym.stabilizer_order(key);
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), sym.order().get_mpz_t(),
                rec.stabilizer_order.get_mpz_t());
    if (r != 0)
        throw InternalError("stabilizer order does not divide the symmetry order");
    rec.orbit_size = q;
    if (p.mat_dim > 0) {
        Facet full{rec.normal, rec.rhs, rec.key};
        rec.rank_of_a = rank(facet_matrix(p, full));
    }
    auto [pos, fresh] = records_.emplace(std::move(key), std::move(rec));
    return {&pos->second, fresh};
}

const OrbitRecord* OrbitDatabase::find(const std::vector<int32_t>& key) const {
    auto it = records_.find(key);
    return it == records_.end() ? nullptr : &it->second;
}

void OrbitDatabase::mark_processed(const std::vector<int32_t>& key) {
    auto it = records_.find(key);
    if (it == records_.end())
        throw InternalError("marking a record that is not in the database");
    it->second.processed = true;
}

size_t OrbitDatabase::unprocessed_count() const {
    size_t n = 0;
    for (const auto& [k, r] : records_)
        if (!r.processed)
            ++n;
    return n;
}

std::vector<std::vector<int32_t>> OrbitDatabase::unprocessed_keys(size_t limit) const {
    std::vector<std::vector<int32_t>> out;
    for (const auto& [k, r] : records_) {
        if (out.size() >= limit)
            break;
        if (!r.processed)
            out.push_back(k);
    }
    return out;
}

Integer OrbitDatabase::total_facets() const {
    Integer t = 0;
    for (const auto& [k, r] : records_)
        t += r.orbit_size;
    return t;
}

Integer OrbitDatabase::unprocessed_facet_total() const {
    Integer t = 0;
    for (const auto& [k, r] : records_)
        if (!r.processed)
            t += r.orbit_size;
    return t;
}

Report OrbitDatabase::report() const {
    Report rep;
    rep.orbit_count = records_.size();
    for (const auto& [k, r] : records_) {
        rep.total_facets += r.orbit_size;
        rep.incidence_hist[r.incidence_count()] += 1;
        rep.stabilizer_hist[r.stabilizer_order] += 1;
        rep.rank_hist[r.rank_of_a] += 1;
    }
    auto column_sum = [](const auto& hist) {
        size_t s = 0;
        for (const auto& [k, v] : hist)
            s += static_cast<size_t>(v);
        return s;
    };
    if (column_sum(rep.incidence_hist) != rep.orbit_count ||
        column_sum(rep.stabilizer_hist) != rep.orbit_count ||
        column_sum(rep.rank_hist) != rep.orbit_count)
        throw DataIntegrityError("histogram column sums disagree with the orbit count");
    return rep;
}

void OrbitDatabase::validate() const {
    if (meta.field_d != QuadExt::context_d())
        throw DataIntegrityError("database field d=" + std::to_string(meta.field_d) +
                                 " does not match the context d=" +
                                 std::to_string(QuadExt::context_d()));
    for (const auto& [key, r] : records_) {
        if (key != r.key)
            throw DataIntegrityError("record key mismatch");
        if (!std::is_sorted(key.begin(), key.end()) ||
            std::adjacent_find(key.begin(), key.end()) != key.end())
            throw DataIntegrityError("record key is not a sorted set");
        if (!key.empty() && (key.front() < 0 || key.back() >= meta.vertex_count))
            throw DataIntegrityError("record key out of vertex range");
        if (r.stabilizer_order < 1 || r.orbit_size < 1)
            throw DataIntegrityError("nonpositive orbit data");
        if (r.stabilizer_order * r.orbit_size != meta.sym_order)
            throw DataIntegrityError("orbit-stabilizer product does not match the symmetry order");
        if (static_cast<int>(r.normal.size()) != meta.full_dim)
            throw DataIntegrityError("representative normal has the wrong dimension");
    }
}

namespace {

std::string scalars_line(const Vec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ' ';
        s += v[i].str();
    }
    return s;
}

Integer parse_integer(const std::string& tok, const char* what) {
    try {
        return Integer(tok);
    } catch (const std::invalid_argument&) {
        throw ParseError(std::string("bad integer for ") + what + ": \"" + tok + "\"");
    }
}

} // namespace

void OrbitDatabase::save(const std::string& path) const {
    std::ostringstream os;
    os << "birkdb " << meta.version << "\n";
    os << "group " << meta.group_name << "\n";
    os << "field_d " << meta.field_d << "\n";
    os << "mat_dim " << meta.mat_dim << "\n";
    os << "ambient_dim " << meta.ambient_dim << "\n";
    os << "full_dim " << meta.full_dim << "\n";
    os << "vertex_count " << meta.vertex_count << "\n";
    os << "sym_order " << meta.sym_order.get_str() << "\n";
    os << "sym_kernel " << meta.sym_kernel.get_str() << "\n";
    os << "use_transpose " << (meta.use_transpose ? 1 : 0) << "\n";
    os << "seed " << meta.seed << "\n";
    os << "recursion_threshold " << meta.recursion_threshold << "\n";
    os << "complete " << (meta.complete ? 1 : 0) << "\n";
    os << "records " << records_.size() << "\n";
    for (const auto& [key, r] : records_) {
        os << "record " << r.incidence_count() << ' ' << r.stabilizer_order.get_str() << ' '
           << r.orbit_size.get_str() << ' ' << r.rank_of_a << ' '
           << (r.processed ? "processed" : "unprocessed") << "\n";
        os << "key";
        for (int32_t v : key)
            os << ' ' << v;
        os << "\n";
        os << "normal " << scalars_line(r.normal) << "\n";
        os << "rhs " << r.rhs.str() << "\n";
    }
    os << "end\n";

    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open \"" + tmp + "\" for writing");
        f << os.str();
        if (!f.flush())
            throw IoError("write to \"" + tmp + "\" failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("cannot rename \"" + tmp + "\" to \"" + path + "\"");
}

OrbitDatabase OrbitDatabase::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open \"" + path + "\"");
    OrbitDatabase db;

    auto next_line = [&](const char* what) {
        std::string line;
        if (!std::getline(f, line))
            throw ParseError(std::string("unexpected end of file before ") + what);
        return line;
    };
    auto keyed_line = [&](const char* keyword) {
        std::string line = next_line(keyword);
        std::istringstream is(line);
        std::string head;
        is >> head;
        if (head != keyword)
            throw ParseError("expected \"" + std::string(keyword) + "\", got \"" + head + "\"");
        std::string rest;
        std::getline(is, rest);
        if (!rest.empty() && rest.front() == ' ')
            rest.erase(rest.begin());
        return rest;
    };

    {
        std::string v = keyed_line("birkdb");
        db.meta.version = static_cast<int>(parse_integer(v, "version").get_si());
        if (db.meta.version != 1)
            throw DataIntegrityError("unsupported database format version " + v);
    }
    db.meta.group_name = keyed_line("group");
    db.meta.field_d = static_cast<int>(parse_integer(keyed_line("field_d"), "field_d").get_si());
    db.meta.mat_dim = static_cast<int>(parse_integer(keyed_line("mat_dim"), "mat_dim").get_si());
    db.meta.ambient_dim =
        static_cast<int>(parse_integer(keyed_line("ambient_dim"), "ambient_dim").get_si());
    db.meta.full_dim = static_cast<int>(parse_integer(keyed_line("full_dim"), "full_dim").get_si());
    db.meta.vertex_count = parse_integer(keyed_line("vertex_count"), "vertex_count").get_si();
    db.meta.sym_order = parse_integer(keyed_line("sym_order"), "sym_order");
    db.meta.sym_kernel = parse_integer(keyed_line("sym_kernel"), "sym_kernel");
    db.meta.use_transpose = keyed_line("use_transpose") == "1";
    db.meta.seed =
        static_cast<uint64_t>(parse_integer(keyed_line("seed"), "seed").get_ui());
    db.meta.recursion_threshold = static_cast<int>(
        parse_integer(keyed_line("recursion_threshold"), "recursion_threshold").get_si());
    db.meta.complete = keyed_line("complete") == "1";
    const long nrecords = parse_integer(keyed_line("records"), "records").get_si();

    for (long i = 0; i < nrecords; ++i) {
        OrbitRecord rec;
        {
            std::istringstream is(keyed_line("record"));
            long inc_count;
            std::string stab, orbit, status;
            int rank_a;
            if (!(is >> inc_count >> stab >> orbit >> rank_a >> status))
                throw ParseError("malformed record line");
            rec.stabilizer_order = parse_integer(stab, "stabilizer order");
            rec.orbit_size = parse_integer(orbit, "orbit size");
            rec.rank_of_a = rank_a;
            if (status == "processed")
                rec.processed = true;
            else if (status == "unprocessed")
                rec.processed = false;
            else
                throw ParseError("unknown record status \"" + status + "\"");
            std::istringstream ks(keyed_line("key"));
            int32_t v;
            while (ks >> v)
                rec.key.push_back(v);
            if (static_cast<long>(rec.key.size()) != inc_count)
                throw DataIntegrityError("incidence count disagrees with the key length");
        }
        {
            std::istringstream ns(keyed_line("normal"));
            std::string tok;
            while (ns >> tok)
                rec.normal.push_back(QuadExt::parse(tok));
            rec.rhs = QuadExt::parse(keyed_line("rhs"));
        }
        std::vector<int32_t> key = rec.key;
        if (!db.records_.emplace(std::move(key), std::move(rec)).second)
            throw DataIntegrityError("duplicate record key");
    }
    if (next_line("end sentinel") != "end")
        throw DataIntegrityError("missing end sentinel (truncated file?)");
    db.validate();
    return db;
}

std::string format_report_text(const Report& r) {
    std::ostringstream os;
    os << "orbits: " << r.orbit_count << "\n";
    os << "total facets: " << r.total_facets.get_str() << "\n";
    os << "incidence histogram (p: orbits):\n";
    for (const auto& [p, n] : r.incidence_hist)
        os << "  " << p << ": " << n << "\n";
    os << "stabilizer histogram (s: orbits):\n";
    for (const auto& [s, n] : r.stabilizer_hist)
        os << "  " << s.get_str() << ": " << n << "\n";
    os << "rank histogram (r: orbits):\n";
    for (const auto& [rk, n] : r.rank_hist)
        os << "  " << rk << ": " << n << "\n";
    return os.str();
}

std::string report_json_text(const Report& r) {
    nlohmann::json j;
    j["orbit_count"] = r.orbit_count;
    j["total_facets"] = r.total_facets.get_str();
    auto& inc = j["incidence_histogram"] = nlohmann::json::object();
    for (const auto& [p, n] : r.incidence_hist)
        inc[std::to_string(p)] = n;
    auto& st = j["stabilizer_histogram"] = nlohmann::json::object();
    for (const auto& [s, n] : r.stabilizer_hist)
        st[s.get_str()] = n;
    auto& rk = j["rank_histogram"] = nlohmann::json::object();
    for (const auto& [x, n] : r.rank_hist)
        rk[std::to_string(x)] = n;
    return j.dump(2) + "\n";
}

} // namespace birk
