#include "ssle/ranking.hpp"

#include <algorithm>

#include "ssle/bootstrap.hpp"

namespace ssle {

namespace {

bool inElection(const RankingState& s) { return std::holds_alternative<BootState>(s.phase); }
bool isSheriff(const RankingState& s) { return std::holds_alternative<Sheriff>(s.phase); }
bool isDeputy(const RankingState& s) { return std::holds_alternative<Deputy>(s.phase); }
bool isRecipient(const RankingState& s) { return std::holds_alternative<Recipient>(s.phase); }
bool isSleeper(const RankingState& s) { return std::holds_alternative<Sleeper>(s.phase); }
bool isRanked(const RankingState& s) { return std::holds_alternative<Ranked>(s.phase); }

/// Channel is live for sheriffs, deputies, recipients and sleepers; election
/// agents have not joined the broadcast yet and ranked agents are silent.
bool channelActive(const RankingState& s) { return !inElection(s) && !isRanked(s); }

std::optional<Label> ownLabel(const RankingState& s) {
    if (const auto* rec = std::get_if<Recipient>(&s.phase)) return rec->label;
    if (const auto* slp = std::get_if<Sleeper>(&s.phase)) return slp->label;
    if (const auto* dep = std::get_if<Deputy>(&s.phase)) return Label{dep->id, 1};
    return std::nullopt;  // sheriffs and election agents carry no label
}

void becomeDeputy(RankingState& s, int badge) {
    s.phase = Deputy{badge, 1};
    s.channel[static_cast<std::size_t>(badge - 1)] = 1;
}

/// The election winner leaves with the full badge roster; with r = 1 the
/// roster is a single badge and it starts as a deputy outright.
void becomeSheriff(RankingState& s, const Params& params) {
    if (params.r == 1) {
        becomeDeputy(s, 1);
    } else {
        s.phase = Sheriff{1, params.r};
    }
}

void becomeRanked(RankingState& s, const Params& params) {
    s.rank = rankFromLabel(ownLabel(s), s.channel, s.rank, params.n);
    s.phase = Ranked{};
}

void becomeSleeper(RankingState& s) {
    if (isSleeper(s)) return;  // keep the running timer
    s.phase = Sleeper{1, ownLabel(s)};
}

void electSheriff(RankingState& u, RankingState& v, const Params& params, const DrawFn& draw) {
    const bool uE = inElection(u);
    const bool vE = inElection(v);

    if (uE && vE) {
        auto& ub = std::get<BootState>(u.phase);
        auto& vb = std::get<BootState>(v.phase);
        if (!ub.initialized) ub = bootInit(draw(params.idSpace(), 0), params);
        if (!vb.initialized) vb = bootInit(draw(params.idSpace(), 1), params);

        const bool uWasCounting = ub.leCount > 0;
        const bool vWasCounting = vb.leCount > 0;
        bootStep(ub, vb);

        // An agent deciding in this interaction that it holds the minimum
        // leaves the election as the sheriff.
        if (uWasCounting && ub.leaderDone && ub.leaderBit) becomeSheriff(u, params);
        if (vWasCounting && vb.leaderDone && vb.leaderBit) becomeSheriff(v, params);
        return;
    }

    // Exactly one agent is still in the election: it joins the labelling
    // machinery as a recipient.
    RankingState& e = uE ? u : v;
    e.phase = Recipient{std::nullopt};
}

void deputize(RankingState& w, RankingState& x) {
    auto& ws = std::get<Sheriff>(w.phase);

    if (ws.lowBadge == ws.highBadge) {
        // Degenerate roster; convert in place, the recipient is untouched.
        becomeDeputy(w, ws.lowBadge);
        return;
    }

    const int xHigh = ws.highBadge;
    ws.highBadge = (ws.highBadge + ws.lowBadge) / 2;
    const int xLow = ws.highBadge + 1;
    x.phase = Sheriff{xLow, xHigh};

    for (RankingState* z : {&x, &w}) {
        const auto& zs = std::get<Sheriff>(z->phase);
        if (zs.lowBadge == zs.highBadge) becomeDeputy(*z, zs.lowBadge);
    }
}

void labeling(RankingState& w, RankingState& x, const Params& params) {
    long long channelSum = 0;
    for (int c : w.channel) channelSum += c;
    if (channelSum < params.r) return;  // deputies hold off until the quorum is visible

    auto& dep = std::get<Deputy>(w.phase);
    if (dep.counter < params.labelPool()) {
        dep.counter += 1;
        w.channel[static_cast<std::size_t>(dep.id - 1)] = dep.counter;
        std::get<Recipient>(x.phase).label = Label{dep.id, dep.counter};
    }
}

void sleepStep(RankingState& u, RankingState& v, const Params& params) {
    const int cap = params.sleepMax();

    if (isSleeper(u) && isSleeper(v)) {
        if (std::get<Sleeper>(u.phase).sleepTimer >= cap ||
            std::get<Sleeper>(v.phase).sleepTimer >= cap) {
            becomeRanked(u, params);
            becomeRanked(v, params);
        } else {
            std::get<Sleeper>(u.phase).sleepTimer += 1;
            std::get<Sleeper>(v.phase).sleepTimer += 1;
        }
        return;
    }

    RankingState& x = isSleeper(u) ? u : v;
    RankingState& w = isSleeper(u) ? v : u;

    if (isRanked(w)) {
        becomeRanked(x, params);
    } else if (std::get<Sleeper>(x.phase).sleepTimer >= cap) {
        becomeRanked(x, params);
        becomeRanked(w, params);
    } else {
        std::get<Sleeper>(x.phase).sleepTimer += 1;
        becomeSleeper(w);
    }
}

}  // namespace

RankingState initialRankingState(const Params& params) {
    RankingState s;
    s.phase = BootState{};
    s.channel.assign(static_cast<std::size_t>(params.r), 0);
    s.rank = 1;
    return s;
}

int rankFromLabel(const std::optional<Label>& label, const std::vector<int>& channel,
                  int fallback, int n) {
    auto clamp = [n](long long v) {
        if (v < 1) return 1;
        if (v > n) return n;
        return static_cast<int>(v);
    };
    if (!label) return clamp(fallback);
    const int i = label->deputyId;
    const int j = label->index;
    if (i < 1 || i > static_cast<int>(channel.size()) || j < 1) return clamp(fallback);

    long long before = 0;
    for (int d = 0; d < i - 1; ++d) before += channel[static_cast<std::size_t>(d)];
    const int own = channel[static_cast<std::size_t>(i - 1)];
    before += j - 1 < own ? j - 1 : own;
    return clamp(before + 1);
}

void assignRanksStep(RankingState& u, RankingState& v, const Params& params, const DrawFn& draw) {
    if (inElection(u) || inElection(v)) {
        electSheriff(u, v, params, draw);
        return;
    }

    if (isSleeper(u) || isSleeper(v)) {
        sleepStep(u, v, params);
    } else if (isSheriff(u) && isRecipient(v)) {
        deputize(u, v);
    } else if (isSheriff(v) && isRecipient(u)) {
        deputize(v, u);
    } else if (isDeputy(u) && isRecipient(v) && !std::get<Recipient>(v.phase).label) {
        labeling(u, v, params);
    } else if (isDeputy(v) && isRecipient(u) && !std::get<Recipient>(u.phase).label) {
        labeling(v, u, params);
    }

    // Broadcast: entrywise max of the deputies' issued-label counts.
    if (channelActive(u) && channelActive(v)) {
        for (std::size_t i = 0; i < u.channel.size(); ++i) {
            const int m = std::max(u.channel[i], v.channel[i]);
            u.channel[i] = m;
            v.channel[i] = m;
        }
    }

    // Once the channel certifies that all n labels are out, agents stop
    // participating and sleep through the tail of the broadcast.
    for (RankingState* s : {&u, &v}) {
        if (!channelActive(*s) || isSleeper(*s)) continue;
        long long sum = 0;
        for (int c : s->channel) sum += c;
        if (sum == params.n) becomeSleeper(*s);
    }
}

}  // namespace ssle
