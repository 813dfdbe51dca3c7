#include "forumnet/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/core.h>

namespace forumnet {

namespace {

// Platform-stable draws on top of mt19937_64: std distributions are
// implementation-defined, these are not.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double u01() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
    int uni_int(int n) { return static_cast<int>(engine() % static_cast<std::uint64_t>(n)); }
};

}  // namespace

SynthCorpus generate_forum(const SynthConfig& cfg) {
    if (cfg.n_users <= 0 || cfg.n_messages <= 0) throw DataError("synthgen: counts must be positive");
    if (cfg.n_messages < cfg.n_users)
        throw DataError(fmt::format(
            "synthgen: n_messages ({}) < n_users ({}): some user would never post",
            cfg.n_messages, cfg.n_users));
    if (cfg.n_moderators + cfg.n_spammers > cfg.n_users)
        throw DataError("synthgen: n_moderators + n_spammers exceeds n_users");
    if (cfg.moderator_reply_mult <= 1.0 || cfg.moderator_delay_div <= 1.0 ||
        cfg.spammer_rate_mult <= 1.0)
        throw DataError("synthgen: multipliers must exceed 1");
    if (cfg.attachment < 0.0 || cfg.span_seconds <= 0)
        throw DataError("synthgen: invalid attachment or time span");

    Rng rng(cfg.seed);
    const int n = cfg.n_users;
    const int width = std::max(4, static_cast<int>(std::to_string(n).size()));
    std::vector<std::string> user(n);
    std::vector<bool> is_mod(n, false), is_spam(n, false);
    for (int i = 0; i < n; ++i) user[i] = fmt::format("u{:0{}}", i + 1, width);
    for (int i = 0; i < cfg.n_moderators; ++i) is_mod[i] = true;
    for (int i = cfg.n_moderators; i < cfg.n_moderators + cfg.n_spammers; ++i) is_spam[i] = true;

    // Author sampling weights (posting rate).
    std::vector<double> rate(n, 1.0);
    double rate_total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (is_mod[i]) rate[i] = cfg.moderator_reply_mult;
        else if (is_spam[i]) rate[i] = cfg.spammer_rate_mult;
        rate_total += rate[i];
    }

    // Chronological timestamps across the span.
    std::vector<Timestamp> times(cfg.n_messages);
    for (auto& t : times)
        t = cfg.start_timestamp +
            static_cast<Timestamp>(rng.u01() * static_cast<double>(cfg.span_seconds));
    std::sort(times.begin(), times.end());

    // First n messages: one opener per user (seeded shuffle), so every
    // node exists. Fisher-Yates with in-house draws.
    std::vector<int> opener_order(n);
    std::iota(opener_order.begin(), opener_order.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(opener_order[i], opener_order[rng.uni_int(i + 1)]);

    // Community structure: roughly one host per hundred users. Members
    // reply to their host, or (triadic closure) to a fellow member who
    // already replied to it, so triangles sit on the hosts and targeted
    // removal of the top-degree nodes takes the clustering down with them.
    const int first_regular = cfg.n_moderators + cfg.n_spammers;
    const int n_hosts = std::min(n - first_regular, std::max(1, n / 100));
    std::vector<int> hosts;
    std::vector<bool> is_host(n, false);
    for (int i = first_regular; i < n && static_cast<int>(hosts.size()) < n_hosts; ++i) {
        hosts.push_back(i);
        is_host[i] = true;
    }
    // Each user joins a host with weight (current size + attachment). A
    // large attachment constant keeps community sizes near-uniform, so
    // every host ends up a hub; a small one lets early communities snowball.
    std::vector<int> host_of(n, -1);
    std::vector<double> comm_weight(hosts.size(), 0.0);
    double comm_total = 0.0;
    for (std::size_t h = 0; h < hosts.size(); ++h) {
        comm_weight[h] = cfg.attachment + 1.0;
        comm_total += comm_weight[h];
    }
    for (int i = 0; i < n; ++i) {
        if (hosts.empty() || is_host[i] || is_spam[i]) continue;
        double r = rng.u01() * comm_total;
        double acc = 0.0;
        std::size_t pick = hosts.size() - 1;
        for (std::size_t h = 0; h < hosts.size(); ++h) {
            acc += comm_weight[h];
            if (r < acc) {
                pick = h;
                break;
            }
        }
        host_of[i] = hosts[pick];
        comm_weight[pick] += 1.0;
        comm_total += 1.0;
    }

    constexpr double kHostRate = 8.0;  // hosts post enough to carry a community
    for (int h : hosts) {
        rate_total += kHostRate - rate[h];
        rate[h] = kHostRate;
    }

    std::vector<std::vector<int>> repliers(n);    // who replied to each author
    std::vector<std::vector<int>> authored(n);    // message indices per author
    std::vector<int> buddy(n, -1);                // fixed triadic partner
    std::vector<int> last_member(n, -1);          // last member to join per host
    std::vector<char> chained(n, 0);              // member already in its chain

    const int msg_width = std::max(6, static_cast<int>(std::to_string(cfg.n_messages).size()));
    SynthCorpus corpus;
    corpus.events.resize(cfg.n_messages);
    std::vector<int> msg_author(cfg.n_messages, -1);

    for (int k = 0; k < cfg.n_messages; ++k) {
        MessageEvent& ev = corpus.events[k];
        ev.message_id = fmt::format("m{:0{}}", k + 1, msg_width);
        ev.timestamp = times[k];

        int author;
        if (k < n) {
            author = opener_order[k];
        } else {
            double r = rng.u01() * rate_total;
            double acc = 0.0;
            author = n - 1;
            for (int v = 0; v < n; ++v) {
                acc += rate[v];
                if (r < acc) {
                    author = v;
                    break;
                }
            }
        }
        ev.author_id = user[author];
        msg_author[k] = author;

        bool opener = k < n || is_spam[author] || rng.u01() < cfg.open_thread_prob;
        int target = -1;
        if (!opener) {
            if (is_mod[author]) {
                // Moderators patrol the whole forum: answer the author of a
                // recent message, whatever the community.
                for (int attempt = 0; attempt < 8 && target < 0; ++attempt) {
                    int window = std::max(1, static_cast<int>(std::ceil(
                                                 k / cfg.moderator_delay_div)));
                    int v = msg_author[k - 1 - rng.uni_int(std::min(window, k))];
                    if (v != author && !is_spam[v]) target = v;
                }
                if (target < 0 && host_of[author] >= 0) target = host_of[author];
            } else if (is_host[author]) {
                // Hosts answer people who engaged with them.
                if (!repliers[author].empty())
                    target = repliers[author][rng.uni_int(static_cast<int>(repliers[author].size()))];
            } else if (host_of[author] >= 0) {
                int h = host_of[author];
                // Each member keeps one fixed conversational partner: the
                // member who was active in the community just before them.
                // Member-member arcs therefore form a single chain per
                // community, so triangles only close through the host.
                if (!chained[author]) {
                    if (last_member[h] >= 0) buddy[author] = last_member[h];
                    last_member[h] = author;
                    chained[author] = 1;
                    // Greet the partner right away so every member is tied
                    // into the community conversation at least once.
                    if (buddy[author] >= 0) target = buddy[author];
                } else if (buddy[author] >= 0 && rng.u01() < cfg.triadic_prob) {
                    target = buddy[author];
                }
                if (target < 0) target = h;
            }
            if (target < 0 || target == author) {
                target = -1;
                opener = true;  // degenerate: nobody eligible
            }
        }

        if (opener) {
            ev.thread_id = fmt::format("t{:0{}}", k + 1, msg_width);
        } else {
            // Moderators answer recent posts; regulars pick any.
            const auto& msgs = authored[target];
            double div = is_mod[author] ? cfg.moderator_delay_div : 1.0;
            int window = std::max(1, static_cast<int>(std::ceil(msgs.size() / div)));
            int parent = msgs[static_cast<int>(msgs.size()) - 1 - rng.uni_int(window)];
            ev.parent_id = corpus.events[parent].message_id;
            ev.thread_id = corpus.events[parent].thread_id;
            repliers[target].push_back(author);
        }

        // Behavioral sentiment profiles: moderators use a tighter, more
        // neutral band (lower emotionality).
        double s;
        if (is_mod[author]) s = 0.52 + (rng.u01() - 0.5) * 0.12;
        else if (is_spam[author]) s = 0.75 + (rng.u01() - 0.5) * 0.10;
        else s = 0.50 + (rng.u01() - 0.5) * 0.60;
        ev.sentiment = std::round(s * 1e6) / 1e6;

        // Zipf-ish vocabulary; moderators draw from a longer tail.
        const int vocab = is_mod[author] ? 6000 : 2000;
        const int len = 5 + rng.uni_int(10);
        std::string text;
        for (int w = 0; w < len; ++w) {
            int idx = static_cast<int>(std::pow(static_cast<double>(vocab), rng.u01())) - 1;
            if (!text.empty()) text += ' ';
            text += fmt::format("w{}", idx + 1);
        }
        ev.text = std::move(text);
        authored[author].push_back(k);
    }

    for (int i = 0; i < n; ++i) {
        if (is_mod[i]) corpus.roster.roles[user[i]] = Role::moderator;
        else if (is_spam[i]) corpus.roster.roles[user[i]] = Role::spammer;
    }
    return corpus;
}

}  // namespace forumnet
