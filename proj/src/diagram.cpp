#include "optvol/diagram.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace optvol {

namespace {

constexpr char slot_letter_name(RegionSlot s) { return "abcd"[int(s)]; }

} // namespace

const Crossing& LinkDiagram::crossing(int id) const {
    for (const auto& c : crossings_)
        if (c.id == id)
            return c;
    throw validation_error("unknown crossing id " + std::to_string(id));
}

Crossing& LinkDiagram::crossing_mut(int id) {
    for (auto& c : crossings_)
        if (c.id == id)
            return c;
    throw validation_error("unknown crossing id " + std::to_string(id));
}

const Arc& LinkDiagram::arc(int id) const {
    for (const auto& a : arcs_)
        if (a.id == id)
            return a;
    throw validation_error("unknown arc id " + std::to_string(id));
}

const Region& LinkDiagram::region(int id) const {
    for (const auto& r : regions_)
        if (r.id == id)
            return r;
    throw validation_error("unknown region id " + std::to_string(id));
}

bool LinkDiagram::has_region(int id) const {
    for (const auto& r : regions_)
        if (r.id == id)
            return true;
    return false;
}

int LinkDiagram::region_at(int crossing_id, RegionSlot s) const {
    return crossing(crossing_id).region_slot(s);
}

LinkDiagram LinkDiagram::parse(const std::string& text) {
    LinkDiagram d;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head))
            continue;
        if (head != "X+" && head != "X-")
            throw parse_error("line " + std::to_string(line_no) +
                              ": expected X+ or X-, got '" + head + "'");
        Crossing c;
        c.id = int(d.crossings_.size()) + 1;
        c.sign = head == "X+" ? Sign::positive : Sign::negative;
        for (int i = 0; i < 4; ++i) {
            if (!(ls >> c.arc[size_t(i)]) || c.arc[size_t(i)] <= 0)
                throw parse_error("line " + std::to_string(line_no) +
                                  ": expected 4 positive arc labels");
        }
        std::string extra;
        if (ls >> extra)
            throw parse_error("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
        d.crossings_.push_back(c);
    }
    if (d.crossings_.empty())
        throw parse_error("empty diagram source");
    d.next_crossing_id_ = int(d.crossings_.size()) + 1;
    d.build_arcs();
    d.validate_connected();
    d.validate_components();
    return d;
}

void LinkDiagram::build_arcs() {
    std::map<int, Arc> by_id;
    for (const auto& c : crossings_) {
        for (int s = 0; s < 4; ++s) {
            const int aid = c.arc[size_t(s)];
            auto& a = by_id[aid];
            a.id = aid;
            ArcEnd end{c.id, s};
            if (c.incoming(s)) {
                if (a.head.crossing != -1)
                    throw parse_error("arc " + std::to_string(aid) +
                                      " enters more than one crossing slot");
                a.head = end;
            } else {
                if (a.tail.crossing != -1)
                    throw parse_error("arc " + std::to_string(aid) +
                                      " leaves more than one crossing slot");
                a.tail = end;
            }
        }
    }
    arcs_.clear();
    int max_id = 0;
    for (auto& [aid, a] : by_id) {
        if (a.head.crossing == -1 || a.tail.crossing == -1)
            throw parse_error("arc " + std::to_string(aid) +
                              " is not used exactly once in each direction"
                              " (check signs and labels)");
        arcs_.push_back(a);
        max_id = std::max(max_id, aid);
    }
    next_arc_id_ = max_id + 1;
}

void LinkDiagram::validate_connected() const {
    if (crossings_.empty())
        return;
    std::set<int> seen;
    std::queue<int> q;
    q.push(crossings_.front().id);
    seen.insert(crossings_.front().id);
    while (!q.empty()) {
        const int cid = q.front();
        q.pop();
        for (const auto& a : arcs_) {
            int other = -1;
            if (a.tail.crossing == cid)
                other = a.head.crossing;
            else if (a.head.crossing == cid)
                other = a.tail.crossing;
            if (other != -1 && !seen.count(other)) {
                seen.insert(other);
                q.push(other);
            }
        }
    }
    if (seen.size() != crossings_.size())
        throw validation_error("diagram is disconnected (split links are not supported)");
}

void LinkDiagram::validate_components() {
    // Follow strands; every component must pass both over and under somewhere.
    std::set<int> visited_arcs;
    int components = 0;
    for (const auto& start : arcs_) {
        if (visited_arcs.count(start.id))
            continue;
        ++components;
        bool has_over = false, has_under = false;
        int aid = start.id;
        while (!visited_arcs.count(aid)) {
            visited_arcs.insert(aid);
            const Arc& a = arc(aid);
            const Crossing& c = crossing(a.head.crossing);
            int out_slot;
            if (a.head.slot == c.under_in_slot()) {
                has_under = true;
                out_slot = c.under_out_slot();
            } else if (a.head.slot == c.over_in_slot()) {
                has_over = true;
                out_slot = c.over_out_slot();
            } else {
                throw validation_error("arc head is not at an incoming slot");
            }
            aid = c.arc[size_t(out_slot)];
        }
        if (!has_over || !has_under)
            throw validation_error(
                "component with only over-crossings or only under-crossings");
    }
    component_count_ = components;
}

void LinkDiagram::compute_regions() { trace_faces(true); }

void LinkDiagram::refresh_from_crossings() {
    build_arcs();
    validate_connected();
    validate_components();
    trace_faces(false);
}

int LinkDiagram::refresh_with_split(int split_region) {
    build_arcs();
    validate_connected();
    validate_components();
    return trace_faces(false, split_region);
}

int LinkDiagram::trace_faces(bool assign_canonical, int split_region) {
    // Directed arc uses: (arc index, forward?). Arriving at slot s, the face
    // on the left owns corner (s+3)%4 and continues out of slot (s+3)%4.
    std::map<std::pair<int, bool>, int> face_of_use;
    std::vector<std::vector<CornerRef>> faces;

    auto arc_index = [&](int aid) -> const Arc& { return arc(aid); };

    for (const auto& a0 : arcs_) {
        for (bool fwd0 : {true, false}) {
            if (face_of_use.count({a0.id, fwd0}))
                continue;
            std::vector<CornerRef> corners;
            int aid = a0.id;
            bool fwd = fwd0;
            do {
                face_of_use[{aid, fwd}] = int(faces.size());
                const Arc& a = arc_index(aid);
                const ArcEnd arrive = fwd ? a.head : a.tail;
                const Crossing& c = crossing(arrive.crossing);
                const int corner = (arrive.slot + 3) % 4;
                corners.push_back({c.id, corner});
                const int next_aid = c.arc[size_t(corner)];
                const Arc& na = arc_index(next_aid);
                // leave the crossing along that arc
                bool next_fwd;
                if (na.tail == ArcEnd{c.id, corner})
                    next_fwd = true;
                else if (na.head == ArcEnd{c.id, corner})
                    next_fwd = false;
                else
                    throw validation_error("face walk lost (non-planar data)");
                aid = next_aid;
                fwd = next_fwd;
            } while (!(aid == a0.id && fwd == fwd0));
            faces.push_back(std::move(corners));
        }
    }

    const size_t expected_corners = 4 * crossings_.size();
    size_t got = 0;
    for (const auto& f : faces)
        got += f.size();
    if (got != expected_corners)
        throw validation_error("face trace did not cover every corner");
    if (faces.size() != crossings_.size() + 2)
        throw validation_error("Euler check failed: regions != crossings + 2");

    std::vector<int> face_region_id(faces.size(), -1);
    int split_piece_id = -1;
    if (assign_canonical) {
        // key: smallest (crossing id, slot letter) over the face's corners
        std::vector<std::pair<std::pair<int, int>, int>> keyed;
        for (size_t i = 0; i < faces.size(); ++i) {
            std::pair<int, int> best{INT32_MAX, INT32_MAX};
            for (const auto& cr : faces[i]) {
                const Crossing& c = crossing(cr.crossing);
                best = std::min(best, {cr.crossing, int(c.slot_of_corner(cr.corner))});
            }
            keyed.push_back({best, int(i)});
        }
        std::sort(keyed.begin(), keyed.end());
        int next = 1;
        for (const auto& [key, idx] : keyed)
            face_region_id[size_t(idx)] = next++;
        next_region_id_ = next;
        for (size_t i = 0; i < faces.size(); ++i)
            for (const auto& cr : faces[i])
                crossing_mut(cr.crossing).region[size_t(cr.corner)] = face_region_id[i];
    } else {
        for (size_t i = 0; i < faces.size(); ++i) {
            int rid = -1;
            for (const auto& cr : faces[i]) {
                const int r = crossing(cr.crossing).region[size_t(cr.corner)];
                if (r < 0)
                    throw validation_error("corner without region id after rewrite");
                if (rid == -1)
                    rid = r;
                else if (rid != r)
                    throw validation_error("rewrite produced inconsistent face labels (" +
                                           std::to_string(rid) + " vs " + std::to_string(r) + ")");
            }
            face_region_id[i] = rid;
            next_region_id_ = std::max(next_region_id_, rid + 1);
        }
        // resolve a deliberate split: two faces share split_region's id
        std::vector<size_t> split_faces;
        for (size_t i = 0; i < faces.size(); ++i)
            if (face_region_id[i] == split_region)
                split_faces.push_back(i);
        if (split_region >= 0) {
            if (split_faces.size() != 2)
                throw validation_error("split region does not bound exactly two faces");
            auto min_corner = [&](size_t i) {
                std::pair<int, int> best{INT32_MAX, INT32_MAX};
                for (const auto& cr : faces[i])
                    best = std::min(best, {cr.crossing, cr.corner});
                return best;
            };
            const size_t other =
                min_corner(split_faces[0]) < min_corner(split_faces[1]) ? split_faces[1]
                                                                        : split_faces[0];
            split_piece_id = next_region_id_++;
            face_region_id[other] = split_piece_id;
            for (const auto& cr : faces[other])
                crossing_mut(cr.crossing).region[size_t(cr.corner)] = split_piece_id;
        }
        std::set<int> used;
        for (int rid : face_region_id) {
            if (used.count(rid))
                throw validation_error("region id " + std::to_string(rid) +
                                       " labels two distinct faces after rewrite");
            used.insert(rid);
        }
    }

    regions_.clear();
    for (size_t i = 0; i < faces.size(); ++i)
        regions_.push_back({face_region_id[i], faces[i]});
    std::sort(regions_.begin(), regions_.end(),
              [](const Region& x, const Region& y) { return x.id < y.id; });

    for (auto& a : arcs_) {
        a.left_region = face_region_id[size_t(face_of_use.at({a.id, true}))];
        a.right_region = face_region_id[size_t(face_of_use.at({a.id, false}))];
    }
    return split_piece_id;
}

std::map<int, int> LinkDiagram::canonical_region_ids() const {
    std::vector<std::pair<std::pair<int, int>, int>> keyed;
    for (const auto& r : regions_) {
        std::pair<int, int> best{INT32_MAX, INT32_MAX};
        for (const auto& cr : r.corners) {
            const Crossing& c = crossing(cr.crossing);
            best = std::min(best, {cr.crossing, int(c.slot_of_corner(cr.corner))});
        }
        keyed.push_back({best, r.id});
    }
    std::sort(keyed.begin(), keyed.end());
    std::map<int, int> out;
    int next = 1;
    for (const auto& [key, id] : keyed)
        out[id] = next++;
    return out;
}

std::vector<std::pair<int, int>> LinkDiagram::adjacent_region_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& a : arcs_)
        if (a.left_region != a.right_region)
            out.push_back({a.left_region, a.right_region});
    return out;
}

LinkDiagram LinkDiagram::mirror() const {
    LinkDiagram m = *this;
    for (auto& c : m.crossings_) {
        const Crossing old = c;
        c.sign = flip(old.sign);
        // reflection reverses the rotation order and swaps slots b and d
        c.arc = {old.arc[0], old.arc[3], old.arc[2], old.arc[1]};
        auto mirrored = [&](RegionSlot s) {
            if (s == RegionSlot::b)
                return old.region_slot(RegionSlot::d);
            if (s == RegionSlot::d)
                return old.region_slot(RegionSlot::b);
            return old.region_slot(s);
        };
        for (int s = 0; s < 4; ++s)
            c.region[size_t(c.corner_of(RegionSlot(s)))] = mirrored(RegionSlot(s));
    }
    m.refresh_from_crossings();
    return m;
}

std::string LinkDiagram::canonical_signature() const {
    std::string best;
    for (const auto& start : crossings_) {
        std::map<int, int> cross_label, arc_label;
        std::vector<int> order;
        std::queue<int> q;
        cross_label[start.id] = 0;
        order.push_back(start.id);
        q.push(start.id);
        int next_arc = 0;
        std::ostringstream sig;
        while (!q.empty()) {
            const int cid = q.front();
            q.pop();
            const Crossing& c = crossing(cid);
            sig << (c.sign == Sign::positive ? "+" : "-");
            for (int s = 0; s < 4; ++s) {
                const int aid = c.arc[size_t(s)];
                if (!arc_label.count(aid))
                    arc_label[aid] = next_arc++;
                const Arc& a = arc(aid);
                const int other = a.tail.crossing == cid && a.tail.slot == s
                                      ? a.head.crossing
                                      : a.tail.crossing;
                if (!cross_label.count(other)) {
                    cross_label[other] = int(order.size());
                    order.push_back(other);
                    q.push(other);
                }
                sig << arc_label[aid] << (c.incoming(s) ? "i" : "o") << ".";
            }
            sig << "|";
        }
        std::string s = sig.str();
        if (best.empty() || s < best)
            best = s;
    }
    return best;
}

bool LinkDiagram::isomorphic_to(const LinkDiagram& other) const {
    if (crossings_.size() != other.crossings_.size())
        return false;
    return canonical_signature() == other.canonical_signature();
}

std::string LinkDiagram::describe() const {
    std::ostringstream os;
    os << "crossings " << crossings_.size() << " arcs " << arcs_.size() << " regions "
       << regions_.size() << " components " << component_count_ << "\n";
    for (const auto& c : crossings_) {
        os << "crossing " << c.id << (c.sign == Sign::positive ? " + arcs" : " - arcs");
        for (int s = 0; s < 4; ++s)
            os << " " << c.arc[size_t(s)];
        os << " regions";
        for (auto s : {RegionSlot::a, RegionSlot::b, RegionSlot::c, RegionSlot::d})
            os << " " << slot_letter_name(s) << "=" << c.region_slot(s);
        os << "\n";
    }
    for (const auto& r : regions_) {
        os << "region " << r.id << " corners";
        for (const auto& cr : r.corners)
            os << " " << cr.crossing << slot_letter_name(crossing(cr.crossing).slot_of_corner(cr.corner));
        os << "\n";
    }
    for (const auto& a : arcs_) {
        os << "arc " << a.id << " from " << a.tail.crossing << ":" << a.tail.slot << " to "
           << a.head.crossing << ":" << a.head.slot << " left " << a.left_region << " right "
           << a.right_region << "\n";
    }
    return os.str();
}

} // namespace optvol
