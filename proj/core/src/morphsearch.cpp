#include "pshaut/morphsearch.hpp"

#include "pshaut/track.hpp"

#include <algorithm>

namespace pshaut {

namespace {

class Search {
public:
    Search(const PresheafAutomaton &Y, const PresheafAutomaton &X, const SearchOptions &opts)
        : Y_(Y), X_(X), opts_(opts), map_(Y.size()), used_(X.size(), 0) {
        if (opts_.bijective)
            opts_.injective = true;
        order_.resize(Y.size());
        for (std::size_t i = 0; i < Y.size(); ++i)
            order_[i] = i;
        // faces of a high-degree element are fixed by propagation, so try those first
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return Y.action_row(make_id<ElemId>(a)).size() > Y.action_row(make_id<ElemId>(b)).size();
        });
    }

    std::vector<ElementMap> run() {
        if (opts_.bijective && !fibers_match())
            return {};
        rec(0);
        return std::move(out_);
    }

private:
    bool fibers_match() const {
        if (Y_.size() != X_.size())
            return false;
        for (std::size_t o = 0; o < Y_.fragment().num_objects(); ++o)
            if (Y_.fiber(make_id<ObjId>(o)).size() != X_.fiber(make_id<ObjId>(o)).size())
                return false;
        return true;
    }

    bool compatible(ElemId y, ElemId x) const {
        if (Y_.base(y) != X_.base(x))
            return false;
        if (opts_.injective && used_[x.idx()])
            return false;
        if (opts_.preserve_marks) {
            if (Y_.is_start(y) && !X_.is_start(x))
                return false;
            if (Y_.is_accept(y) && !X_.is_accept(x))
                return false;
            if (opts_.bijective && (X_.is_start(x) != Y_.is_start(y) || X_.is_accept(x) != Y_.is_accept(y)))
                return false;
        }
        return true;
    }

    bool assign(ElemId y0, ElemId x0) {
        work_.clear();
        work_.push_back({y0, x0});
        while (!work_.empty()) {
            auto [y, x] = work_.back();
            work_.pop_back();
            if (map_[y.idx()].valid()) {
                if (map_[y.idx()] != x)
                    return false;
                continue;
            }
            if (!compatible(y, x))
                return false;
            map_[y.idx()] = x;
            used_[x.idx()] = 1;
            trail_.push_back(y);
            const auto &ry = Y_.action_row(y);
            const auto &rx = X_.action_row(x);
            for (std::size_t p = 0; p < ry.size(); ++p) {
                if (!ry[p].valid())
                    continue;
                if (!rx[p].valid())
                    return false;
                work_.push_back({ry[p], rx[p]});
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            ElemId y = trail_.back();
            trail_.pop_back();
            used_[map_[y.idx()].idx()] = 0;
            map_[y.idx()] = ElemId();
        }
    }

    bool inverse_natural() const {
        std::vector<ElemId> inv(X_.size());
        for (std::size_t i = 0; i < map_.size(); ++i)
            inv[map_[i].idx()] = make_id<ElemId>(i);
        for (std::size_t i = 0; i < X_.size(); ++i) {
            ElemId x = make_id<ElemId>(i);
            const auto &rx = X_.action_row(x);
            const auto &ry = Y_.action_row(inv[i]);
            for (std::size_t p = 0; p < rx.size(); ++p) {
                if (rx[p].valid() != ry[p].valid())
                    return false;
                if (rx[p].valid() && inv[rx[p].idx()] != ry[p])
                    return false;
            }
        }
        return true;
    }

    void rec(std::size_t k) {
        if (opts_.limit && out_.size() >= opts_.limit)
            return;
        while (k < order_.size() && map_[order_[k]].valid())
            ++k;
        if (k == order_.size()) {
            if (!opts_.bijective || inverse_natural())
                out_.push_back(map_);
            return;
        }
        ElemId y = make_id<ElemId>(order_[k]);
        for (ElemId x : X_.fiber(Y_.base(y))) {
            std::size_t mark = trail_.size();
            if (assign(y, x))
                rec(k + 1);
            undo(mark);
            if (opts_.limit && out_.size() >= opts_.limit)
                return;
        }
    }

    const PresheafAutomaton &Y_, &X_;
    SearchOptions opts_;
    ElementMap map_;
    std::vector<char> used_;
    std::vector<std::size_t> order_;
    std::vector<ElemId> trail_;
    std::vector<std::pair<ElemId, ElemId>> work_;
    std::vector<ElementMap> out_;
};

}  // namespace

std::vector<ElementMap> find_morphisms(const PresheafAutomaton &Y, const PresheafAutomaton &X,
                                       const SearchOptions &opts) {
    if (!same_fragment(Y.fragment(), X.fragment()))
        throw Error(ErrorCode::InvalidInput, "morphism search across different fragments");
    return Search(Y, X, opts).run();
}

bool is_morphism(const PresheafAutomaton &Y, const PresheafAutomaton &X, const ElementMap &m, bool marks) {
    if (m.size() != Y.size())
        return false;
    for (std::size_t i = 0; i < Y.size(); ++i) {
        ElemId y = make_id<ElemId>(i);
        ElemId x = m[i];
        if (!x.valid() || x.idx() >= X.size() || X.base(x) != Y.base(y))
            return false;
        if (marks && ((Y.is_start(y) && !X.is_start(x)) || (Y.is_accept(y) && !X.is_accept(x))))
            return false;
        for (MorId phi : Y.fragment().into(Y.base(y))) {
            ElemId a = Y.act(phi, y);
            if (!a.valid())
                continue;
            if (X.act(phi, x) != m[a.idx()])
                return false;
        }
    }
    return true;
}

bool accepts(const PresheafAutomaton &X, const TrackObject &g) {
    SearchOptions o;
    o.limit = 1;
    return !find_morphisms(g.automaton, X, o).empty();
}

bool subsumes(const TrackObject &g, const TrackObject &d) {
    SearchOptions o;
    o.limit = 1;
    return !find_morphisms(g.automaton, d.automaton, o).empty();
}

}  // namespace pshaut
