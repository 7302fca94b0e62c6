#include "rcpac/zoo.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcpac {

bool uses_input(const ExprPtr& e) {
    if (!e) return false;
    if (e->kind == Kind::Input) return true;
    return uses_input(e->a) || uses_input(e->b) || uses_input(e->c);
}

namespace {

// Folds input/acc/eval/loop/if/div/mod-free expressions to their value.
std::optional<Nat> const_value(const ExprPtr& e) {
    if (!e) return std::nullopt;
    switch (e->kind) {
        case Kind::Const: return e->value;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Less:
        case Kind::Eq:
        case Kind::Pair: {
            auto l = const_value(e->a), r = const_value(e->b);
            if (!l || !r) return std::nullopt;
            switch (e->kind) {
                case Kind::Add: return *l + *r;
                case Kind::Sub: return *l >= *r ? *l - *r : Nat(0);
                case Kind::Mul: return *l * *r;
                case Kind::Less: return Nat(*l < *r ? 1 : 0);
                case Kind::Eq: return Nat(*l == *r ? 1 : 0);
                default: return nat_pair(*l, *r);
            }
        }
        case Kind::Fst: {
            auto v = const_value(e->a);
            if (!v) return std::nullopt;
            return nat_unpair(*v).first;
        }
        case Kind::Snd: {
            auto v = const_value(e->a);
            if (!v) return std::nullopt;
            return nat_unpair(*v).second;
        }
        default: return std::nullopt;
    }
}

}  // namespace

bool certainly_diverges(const ExprPtr& e) {
    if (!e) return false;
    switch (e->kind) {
        case Kind::Loop: {
            auto cv = const_value(e->b);
            if (cv && *cv != 0) return true;  // condition never becomes 0
            return certainly_diverges(e->a);
        }
        case Kind::Div:
        case Kind::Mod: {
            auto rv = const_value(e->b);
            // left operand either diverges itself or the zero divisor is hit
            if (rv && *rv == 0) return true;
            return certainly_diverges(e->a);
        }
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Less:
        case Kind::Eq:
        case Kind::Pair:
        case Kind::Eval:
            return certainly_diverges(e->a) ||
                   (const_value(e->a).has_value() && certainly_diverges(e->b));
        case Kind::Fst:
        case Kind::Snd:
            return certainly_diverges(e->a);
        case Kind::If:
            return certainly_diverges(e->a);
        default:
            return false;
    }
}

namespace {

constexpr std::uint64_t kLoopSanityBudget = 20000;

// Frozen fixture set. Indices stay below 1000 so that oracle enumerations
// over parameter codes derived from machine indices remain fast.
const char* kBuiltinZoo = R"(# rcpac machine zoo
# entry <name> halts steps=<s> output=<o> | entry <name> loops
# each entry is followed by one program-text line

entry acc_leaf halts steps=1 output=0
acc
entry const_one halts steps=1 output=1
(const 1)
entry fst_acc halts steps=2 output=0
(fst acc)
entry const_two halts steps=1 output=2
(const 2)
entry snd_acc halts steps=2 output=0
(snd acc)
entry const_three halts steps=1 output=3
(const 3)
entry add_acc halts steps=3 output=0
(add acc acc)
entry fst_add halts steps=4 output=0
(fst (add acc acc))
entry omega loops
(loop (const 0) (const 1) acc)
entry div_zero_acc loops
(div acc (const 0))
entry mod_zero_acc loops
(mod acc (const 0))
entry div_zero_const loops
(div (const 0) (const 0))
entry mod_zero_const loops
(mod (const 0) (const 0))
)";

}  // namespace

const std::string& Zoo::builtin_text() {
    static const std::string text = kBuiltinZoo;
    return text;
}

Zoo Zoo::builtin() { return load_text(builtin_text()); }

Zoo Zoo::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("zoo: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_text(ss.str());
}

Zoo Zoo::load_text(const std::string& content) {
    Zoo zoo;
    std::istringstream in(content);
    std::string line;
    std::optional<ZooEntry> pending;
    auto fail = [](const std::string& msg) { throw std::runtime_error("zoo: " + msg); };

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!pending) {
            std::istringstream ls(line);
            std::string kw, name, behavior;
            ls >> kw >> name >> behavior;
            if (kw != "entry") fail("expected 'entry', got: " + line);
            ZooEntry e;
            e.name = name;
            if (behavior == "halts") {
                std::string sfield, ofield;
                ls >> sfield >> ofield;
                if (sfield.rfind("steps=", 0) != 0 || ofield.rfind("output=", 0) != 0)
                    fail("bad halts annotation: " + line);
                e.halts = HaltBehavior{std::stoull(sfield.substr(6)), Nat{ofield.substr(7)}};
            } else if (behavior != "loops") {
                fail("unknown behavior: " + behavior);
            }
            pending = std::move(e);
        } else {
            pending->program = parse_program(line);
            Nat idx = encode(pending->program);
            if (idx > Nat(UINT32_MAX)) fail("fixture index out of range: " + pending->name);
            pending->index = idx.convert_to<std::uint64_t>();

            if (uses_input(pending->program.root))
                fail("fixture must ignore its input: " + pending->name);
            if (pending->halts) {
                // exact replay on several inputs; behavior is input-independent
                for (Nat input : {Nat(0), Nat(pending->index), Nat(7)}) {
                    auto r = run_program(pending->program, input, pending->halts->steps + 16);
                    if (!r.ok() || r.halted->steps != pending->halts->steps ||
                        r.halted->output != pending->halts->output)
                        fail("declared behavior does not replay: " + pending->name);
                }
            } else {
                if (!certainly_diverges(pending->program.root))
                    fail("no divergence certificate for: " + pending->name);
                if (run_program(pending->program, Nat(0), kLoopSanityBudget).ok())
                    fail("declared looper halted: " + pending->name);
            }
            zoo.by_index_[pending->index] = zoo.entries_.size();
            zoo.entries_.push_back(std::move(*pending));
            pending.reset();
        }
    }
    if (pending) fail("trailing entry without program line");
    if (zoo.entries_.empty()) fail("no entries");
    return zoo;
}

std::string Zoo::to_file_text() const {
    std::string out = "# rcpac machine zoo\n";
    for (const auto& e : entries_) {
        out += "entry " + e.name;
        if (e.halts)
            out += " halts steps=" + std::to_string(e.halts->steps) + " output=" + e.halts->output.str();
        else
            out += " loops";
        out += "\n" + to_text(e.program) + "\n";
    }
    return out;
}

std::vector<std::uint64_t> Zoo::halting_indices() const {
    std::vector<std::uint64_t> out;
    for (const auto& e : entries_)
        if (e.halting()) out.push_back(e.index);
    return out;
}

std::vector<std::uint64_t> Zoo::looping_indices() const {
    std::vector<std::uint64_t> out;
    for (const auto& e : entries_)
        if (!e.halting()) out.push_back(e.index);
    return out;
}

const ZooEntry* Zoo::find(std::uint64_t index) const {
    auto it = by_index_.find(index);
    return it == by_index_.end() ? nullptr : &entries_[it->second];
}

HaltingOracle Zoo::oracle() const {
    // copy the relevant table; the oracle outlives the Zoo object freely
    auto table = std::make_shared<std::map<std::uint64_t, std::optional<std::uint64_t>>>();
    for (const auto& e : entries_)
        (*table)[e.index] = e.halts ? std::optional<std::uint64_t>(e.halts->steps) : std::nullopt;
    return [table](std::uint64_t index) -> std::optional<std::uint64_t> {
        auto it = table->find(index);
        if (it == table->end())
            throw std::out_of_range("halting oracle: index " + std::to_string(index) +
                                    " has no ground truth");
        return it->second;
    };
}

}  // namespace rcpac
