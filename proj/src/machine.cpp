#include "rcpac/machine.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <shared_mutex>
#include <map>
#include <stdexcept>
#include <vector>

namespace rcpac {

namespace {

ExprPtr mk(Kind k, Nat v, ExprPtr a = nullptr, ExprPtr b = nullptr, ExprPtr c = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->value = std::move(v);
    e->a = std::move(a);
    e->b = std::move(b);
    e->c = std::move(c);
    return e;
}

int arity(Kind k) {
    switch (k) {
        case Kind::Const:
        case Kind::Input:
        case Kind::Acc: return 0;
        case Kind::Fst:
        case Kind::Snd: return 1;
        case Kind::If:
        case Kind::Loop: return 3;
        default: return 2;
    }
}

// Constructor tags of the code space. The two leaves Input/Acc own codes 0
// and 1; everything else lives at 2 + tag + 14 * payload.
constexpr int kTagConst = 0;
constexpr int kTagFst = 1;
constexpr int kTagSnd = 2;
constexpr int kTagAdd = 3;
constexpr int kTagSub = 4;
constexpr int kTagMul = 5;
constexpr int kTagDiv = 6;
constexpr int kTagMod = 7;
constexpr int kTagLess = 8;
constexpr int kTagEq = 9;
constexpr int kTagPair = 10;
constexpr int kTagEval = 11;
constexpr int kTagIf = 12;
constexpr int kTagLoop = 13;

int tag_of(Kind k) {
    switch (k) {
        case Kind::Const: return kTagConst;
        case Kind::Fst: return kTagFst;
        case Kind::Snd: return kTagSnd;
        case Kind::Add: return kTagAdd;
        case Kind::Sub: return kTagSub;
        case Kind::Mul: return kTagMul;
        case Kind::Div: return kTagDiv;
        case Kind::Mod: return kTagMod;
        case Kind::Less: return kTagLess;
        case Kind::Eq: return kTagEq;
        case Kind::Pair: return kTagPair;
        case Kind::Eval: return kTagEval;
        case Kind::If: return kTagIf;
        case Kind::Loop: return kTagLoop;
        default: throw std::logic_error("tag_of: leaf kind");
    }
}

Kind kind_of_tag(int t) {
    static constexpr Kind table[] = {
        Kind::Const, Kind::Fst, Kind::Snd, Kind::Add, Kind::Sub, Kind::Mul,
        Kind::Div, Kind::Mod, Kind::Less, Kind::Eq, Kind::Pair, Kind::Eval,
        Kind::If, Kind::Loop};
    return table[t];
}

// Structural decode, before the 0 <-> omega transposition. Iterative
// two-phase (expand to preorder, fold in reverse): a recursive version
// would overflow the C++ stack on adversarial chain codes.
ExprPtr decode_std(const Nat& index) {
    struct Folded { Kind k; Nat v; int n; };
    std::vector<Folded> fold_plan;
    std::vector<Nat> expand{index};
    while (!expand.empty()) {
        Nat code = expand.back();
        expand.pop_back();
        if (code == 0) {
            fold_plan.push_back({Kind::Input, 0, 0});
            continue;
        }
        if (code == 1) {
            fold_plan.push_back({Kind::Acc, 0, 0});
            continue;
        }
        Nat j = code - 2;
        int t = static_cast<int>(j % 14);
        Nat payload = j / 14;
        Kind k = kind_of_tag(t);
        switch (arity(k)) {
            case 0:
                fold_plan.push_back({Kind::Const, payload, 0});
                break;
            case 1:
                fold_plan.push_back({k, 0, 1});
                expand.push_back(payload);
                break;
            case 2: {
                auto [l, r] = nat_unpair(payload);
                fold_plan.push_back({k, 0, 2});
                // push right first so left is expanded (and folded) first
                expand.push_back(r);
                expand.push_back(l);
                break;
            }
            case 3: {
                auto [a, bc] = nat_unpair(payload);
                auto [b, c] = nat_unpair(bc);
                fold_plan.push_back({k, 0, 3});
                expand.push_back(c);
                expand.push_back(b);
                expand.push_back(a);
                break;
            }
        }
    }
    // Fold in reverse preorder: children appear after their parent in
    // fold_plan, so walking backwards children are ready on the stack
    // (leftmost child on top).
    std::vector<ExprPtr> out;
    for (auto it = fold_plan.rbegin(); it != fold_plan.rend(); ++it) {
        switch (it->n) {
            case 0:
                if (it->k == Kind::Const)
                    out.push_back(mk(Kind::Const, it->v));
                else
                    out.push_back(mk(it->k, 0));
                break;
            case 1: {
                ExprPtr x = out.back();
                out.pop_back();
                out.push_back(mk(it->k, 0, x));
                break;
            }
            case 2: {
                ExprPtr l = out.back();
                out.pop_back();
                ExprPtr r = out.back();
                out.pop_back();
                out.push_back(mk(it->k, 0, l, r));
                break;
            }
            case 3: {
                ExprPtr a = out.back();
                out.pop_back();
                ExprPtr b = out.back();
                out.pop_back();
                ExprPtr c = out.back();
                out.pop_back();
                out.push_back(mk(it->k, 0, a, b, c));
                break;
            }
        }
    }
    if (out.size() != 1) throw std::logic_error("decode_std: fold imbalance");
    return out.back();
}

Nat encode_std(const ExprPtr& e) {
    // Postorder fold with explicit stacks.
    std::vector<std::pair<const Expr*, bool>> work{{e.get(), false}};
    std::vector<Nat> out;
    while (!work.empty()) {
        auto [node, visited] = work.back();
        work.pop_back();
        if (!visited) {
            work.push_back({node, true});
            if (node->c) work.push_back({node->c.get(), false});
            if (node->b) work.push_back({node->b.get(), false});
            if (node->a) work.push_back({node->a.get(), false});
            continue;
        }
        switch (arity(node->kind)) {
            case 0:
                if (node->kind == Kind::Input) out.push_back(0);
                else if (node->kind == Kind::Acc) out.push_back(1);
                else out.push_back(Nat(2) + Nat(kTagConst) + 14 * node->value);
                break;
            case 1: {
                Nat x = out.back();
                out.pop_back();
                out.push_back(Nat(2) + tag_of(node->kind) + 14 * x);
                break;
            }
            case 2: {
                Nat r = out.back();
                out.pop_back();
                Nat l = out.back();
                out.pop_back();
                out.push_back(Nat(2) + tag_of(node->kind) + 14 * nat_pair(l, r));
                break;
            }
            case 3: {
                Nat c = out.back();
                out.pop_back();
                Nat b = out.back();
                out.pop_back();
                Nat a = out.back();
                out.pop_back();
                out.push_back(Nat(2) + tag_of(node->kind) + 14 * nat_pair(a, nat_pair(b, c)));
                break;
            }
        }
    }
    if (out.size() != 1) throw std::logic_error("encode_std: fold imbalance");
    return out.back();
}

ExprPtr omega_tree() {
    // loop(const 0, const 1, acc) never exits: the canonical diverger.
    static const ExprPtr om = e_loop(e_const(0), e_const(1), e_acc());
    return om;
}

const Nat& omega_std_code() {
    static const Nat code = encode_std(omega_tree());
    return code;
}

}  // namespace

ExprPtr e_const(Nat v) { return mk(Kind::Const, std::move(v)); }
ExprPtr e_input() { return mk(Kind::Input, 0); }
ExprPtr e_acc() { return mk(Kind::Acc, 0); }
ExprPtr e_fst(ExprPtr x) { return mk(Kind::Fst, 0, std::move(x)); }
ExprPtr e_snd(ExprPtr x) { return mk(Kind::Snd, 0, std::move(x)); }
ExprPtr e_add(ExprPtr l, ExprPtr r) { return mk(Kind::Add, 0, std::move(l), std::move(r)); }
ExprPtr e_sub(ExprPtr l, ExprPtr r) { return mk(Kind::Sub, 0, std::move(l), std::move(r)); }
ExprPtr e_mul(ExprPtr l, ExprPtr r) { return mk(Kind::Mul, 0, std::move(l), std::move(r)); }
ExprPtr e_div(ExprPtr l, ExprPtr r) { return mk(Kind::Div, 0, std::move(l), std::move(r)); }
ExprPtr e_mod(ExprPtr l, ExprPtr r) { return mk(Kind::Mod, 0, std::move(l), std::move(r)); }
ExprPtr e_less(ExprPtr l, ExprPtr r) { return mk(Kind::Less, 0, std::move(l), std::move(r)); }
ExprPtr e_eq(ExprPtr l, ExprPtr r) { return mk(Kind::Eq, 0, std::move(l), std::move(r)); }
ExprPtr e_pair(ExprPtr l, ExprPtr r) { return mk(Kind::Pair, 0, std::move(l), std::move(r)); }
ExprPtr e_eval(ExprPtr code, ExprPtr arg) { return mk(Kind::Eval, 0, std::move(code), std::move(arg)); }
ExprPtr e_if(ExprPtr c, ExprPtr t, ExprPtr e) { return mk(Kind::If, 0, std::move(c), std::move(t), std::move(e)); }
ExprPtr e_loop(ExprPtr init, ExprPtr cond, ExprPtr body) {
    return mk(Kind::Loop, 0, std::move(init), std::move(cond), std::move(body));
}

bool structurally_equal(const ExprPtr& x, const ExprPtr& y) {
    if (x.get() == y.get()) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->value != y->value) return false;
    return structurally_equal(x->a, y->a) && structurally_equal(x->b, y->b) &&
           structurally_equal(x->c, y->c);
}

Program decode(const Nat& index) {
    const Nat& m = omega_std_code();
    if (index == 0) return Program{omega_tree()};
    if (index == m) return Program{decode_std(0)};
    return Program{decode_std(index)};
}

Nat encode(const Program& p) {
    const Nat& m = omega_std_code();
    Nat e = encode_std(p.root);
    if (e == 0) return m;
    if (e == m) return 0;
    return e;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Const: return "const";
        case Kind::Input: return "input";
        case Kind::Acc: return "acc";
        case Kind::Fst: return "fst";
        case Kind::Snd: return "snd";
        case Kind::Add: return "add";
        case Kind::Sub: return "sub";
        case Kind::Mul: return "mul";
        case Kind::Div: return "div";
        case Kind::Mod: return "mod";
        case Kind::Less: return "less";
        case Kind::Eq: return "eq";
        case Kind::Pair: return "pair";
        case Kind::Eval: return "eval";
        case Kind::If: return "if";
        case Kind::Loop: return "loop";
    }
    return "?";
}

void print_expr(const Expr* e, std::string& out) {
    if (e->kind == Kind::Input || e->kind == Kind::Acc) {
        out += kind_name(e->kind);
        return;
    }
    out += '(';
    out += kind_name(e->kind);
    if (e->kind == Kind::Const) {
        out += ' ';
        out += e->value.str();
    }
    for (const ExprPtr* ch : {&e->a, &e->b, &e->c}) {
        if (*ch) {
            out += ' ';
            print_expr(ch->get(), out);
        }
    }
    out += ')';
}

struct Parser {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r'))
            ++pos;
    }
    std::string_view token() {
        skip_ws();
        if (pos >= s.size()) throw std::invalid_argument("program text: unexpected end");
        if (s[pos] == '(' || s[pos] == ')') return s.substr(pos++, 1);
        size_t start = pos;
        while (pos < s.size() && s[pos] != '(' && s[pos] != ')' && !isspace((unsigned char)s[pos]))
            ++pos;
        return s.substr(start, pos - start);
    }
    ExprPtr parse() {
        std::string_view t = token();
        if (t == "input") return e_input();
        if (t == "acc") return e_acc();
        if (t != "(") throw std::invalid_argument("program text: expected '(', 'input' or 'acc'");
        std::string_view head = token();
        ExprPtr result;
        if (head == "const") {
            std::string_view num = token();
            Nat v{std::string(num)};
            result = e_const(v);
        } else {
            static const std::map<std::string_view, Kind> kinds = {
                {"fst", Kind::Fst}, {"snd", Kind::Snd}, {"add", Kind::Add},
                {"sub", Kind::Sub}, {"mul", Kind::Mul}, {"div", Kind::Div},
                {"mod", Kind::Mod}, {"less", Kind::Less}, {"eq", Kind::Eq},
                {"pair", Kind::Pair}, {"eval", Kind::Eval}, {"if", Kind::If},
                {"loop", Kind::Loop}};
            auto it = kinds.find(head);
            if (it == kinds.end())
                throw std::invalid_argument("program text: unknown construct '" + std::string(head) + "'");
            Kind k = it->second;
            ExprPtr a = parse();
            ExprPtr b = arity(k) >= 2 ? parse() : nullptr;
            ExprPtr c = arity(k) >= 3 ? parse() : nullptr;
            result = mk(k, 0, std::move(a), std::move(b), std::move(c));
        }
        std::string_view close = token();
        if (close != ")") throw std::invalid_argument("program text: expected ')'");
        return result;
    }
};

}  // namespace

std::string to_text(const Program& p) {
    std::string out;
    print_expr(p.root.get(), out);
    return out;
}

Program parse_program(std::string_view text) {
    Parser parser{text};
    ExprPtr e = parser.parse();
    parser.skip_ws();
    if (parser.pos != text.size())
        throw std::invalid_argument("program text: trailing characters");
    return Program{e};
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

namespace {

struct Env {
    Nat input;
    std::vector<Nat> accs;
    ExprPtr keep_alive;  // decoded program executed under this env
};

enum class FrameOp : std::uint8_t {
    Enter,     // begin evaluating expr
    Unary,     // apply fst/snd to the value
    BinLeft,   // left value done; evaluate right
    BinRight,  // both values done; combine
    IfCond,    // pick branch from cond value
    LoopInit,  // init value done; open acc scope, test cond
    LoopCond,  // cond value done; exit or run body
    LoopBody,  // body value done; store acc, test cond
    EvalCode,  // code value done; evaluate argument
    EvalArg,   // argument done; decode and enter program
    PopEnv,    // leave an eval environment
};

struct Frame {
    FrameOp op;
    const Expr* e = nullptr;
    Nat saved;  // left operand / code value
};

}  // namespace

RunOutcome run_program(const Program& p, const Nat& input, std::uint64_t budget) {
    std::vector<Frame> control;
    std::vector<Nat> values;
    std::vector<Env> envs;
    envs.push_back(Env{input, {}, p.root});
    std::map<Nat, ExprPtr> decode_cache;
    std::uint64_t steps = 0;

    auto diverge = [&]() { return RunOutcome{std::nullopt, budget}; };

    control.push_back(Frame{FrameOp::Enter, p.root.get(), 0});
    while (!control.empty()) {
        Frame f = std::move(control.back());
        control.pop_back();
        switch (f.op) {
            case FrameOp::Enter: {
                if (steps == budget) return diverge();
                ++steps;
                const Expr* e = f.e;
                switch (e->kind) {
                    case Kind::Const: values.push_back(e->value); break;
                    case Kind::Input: values.push_back(envs.back().input); break;
                    case Kind::Acc:
                        values.push_back(envs.back().accs.empty() ? Nat(0) : envs.back().accs.back());
                        break;
                    case Kind::Fst:
                    case Kind::Snd:
                        control.push_back(Frame{FrameOp::Unary, e, 0});
                        control.push_back(Frame{FrameOp::Enter, e->a.get(), 0});
                        break;
                    case Kind::If:
                        control.push_back(Frame{FrameOp::IfCond, e, 0});
                        control.push_back(Frame{FrameOp::Enter, e->a.get(), 0});
                        break;
                    case Kind::Loop:
                        control.push_back(Frame{FrameOp::LoopInit, e, 0});
                        control.push_back(Frame{FrameOp::Enter, e->a.get(), 0});
                        break;
                    case Kind::Eval:
                        control.push_back(Frame{FrameOp::EvalCode, e, 0});
                        control.push_back(Frame{FrameOp::Enter, e->a.get(), 0});
                        break;
                    default:  // binary arithmetic / pair
                        control.push_back(Frame{FrameOp::BinLeft, e, 0});
                        control.push_back(Frame{FrameOp::Enter, e->a.get(), 0});
                        break;
                }
                break;
            }
            case FrameOp::Unary: {
                Nat v = std::move(values.back());
                values.pop_back();
                auto [a, b] = nat_unpair(v);
                values.push_back(f.e->kind == Kind::Fst ? a : b);
                break;
            }
            case FrameOp::BinLeft: {
                Frame next{FrameOp::BinRight, f.e, std::move(values.back())};
                values.pop_back();
                control.push_back(std::move(next));
                control.push_back(Frame{FrameOp::Enter, f.e->b.get(), 0});
                break;
            }
            case FrameOp::BinRight: {
                Nat r = std::move(values.back());
                values.pop_back();
                Nat l = std::move(f.saved);
                switch (f.e->kind) {
                    case Kind::Add: values.push_back(l + r); break;
                    case Kind::Sub: values.push_back(l >= r ? l - r : Nat(0)); break;
                    case Kind::Mul: values.push_back(l * r); break;
                    case Kind::Div:
                        if (r == 0) return diverge();
                        values.push_back(l / r);
                        break;
                    case Kind::Mod:
                        if (r == 0) return diverge();
                        values.push_back(l % r);
                        break;
                    case Kind::Less: values.push_back(Nat(l < r ? 1 : 0)); break;
                    case Kind::Eq: values.push_back(Nat(l == r ? 1 : 0)); break;
                    case Kind::Pair: values.push_back(nat_pair(l, r)); break;
                    default: throw std::logic_error("run: bad binary kind");
                }
                break;
            }
            case FrameOp::IfCond: {
                Nat c = std::move(values.back());
                values.pop_back();
                control.push_back(Frame{FrameOp::Enter, c != 0 ? f.e->b.get() : f.e->c.get(), 0});
                break;
            }
            case FrameOp::LoopInit: {
                envs.back().accs.push_back(std::move(values.back()));
                values.pop_back();
                control.push_back(Frame{FrameOp::LoopCond, f.e, 0});
                control.push_back(Frame{FrameOp::Enter, f.e->b.get(), 0});
                break;
            }
            case FrameOp::LoopCond: {
                Nat c = std::move(values.back());
                values.pop_back();
                if (c == 0) {
                    values.push_back(std::move(envs.back().accs.back()));
                    envs.back().accs.pop_back();
                } else {
                    control.push_back(Frame{FrameOp::LoopBody, f.e, 0});
                    control.push_back(Frame{FrameOp::Enter, f.e->c.get(), 0});
                }
                break;
            }
            case FrameOp::LoopBody: {
                envs.back().accs.back() = std::move(values.back());
                values.pop_back();
                control.push_back(Frame{FrameOp::LoopCond, f.e, 0});
                control.push_back(Frame{FrameOp::Enter, f.e->b.get(), 0});
                break;
            }
            case FrameOp::EvalCode: {
                Frame next{FrameOp::EvalArg, f.e, std::move(values.back())};
                values.pop_back();
                control.push_back(std::move(next));
                control.push_back(Frame{FrameOp::Enter, f.e->b.get(), 0});
                break;
            }
            case FrameOp::EvalArg: {
                Nat arg = std::move(values.back());
                values.pop_back();
                ExprPtr prog;
                auto it = decode_cache.find(f.saved);
                if (it != decode_cache.end()) {
                    prog = it->second;
                } else {
                    prog = decode(f.saved).root;
                    decode_cache.emplace(f.saved, prog);
                }
                envs.push_back(Env{std::move(arg), {}, prog});
                control.push_back(Frame{FrameOp::PopEnv, nullptr, 0});
                control.push_back(Frame{FrameOp::Enter, prog.get(), 0});
                break;
            }
            case FrameOp::PopEnv:
                envs.pop_back();
                break;
        }
    }
    if (values.size() != 1) throw std::logic_error("run: value stack imbalance");
    return RunOutcome{Halted{std::move(values.back()), steps}, budget};
}

RunOutcome run_bounded(const Nat& index, const Nat& input, std::uint64_t budget) {
    return run_program(decode(index), input, budget);
}

bool halts_within(const Nat& index, const Nat& input, std::uint64_t j) {
    return run_bounded(index, input, j).ok();
}

namespace {

constexpr std::uint64_t kProbeFloor = 4096;  // one run usually settles a machine for good

struct ProbeRecord {
    std::optional<std::uint64_t> halt_step;
    std::uint64_t no_halt_up_to = 0;
};

}  // namespace

std::optional<std::uint64_t> first_halting_step(std::uint64_t index, std::uint64_t input,
                                                std::uint64_t budget) {
    static std::map<std::pair<std::uint64_t, std::uint64_t>, ProbeRecord> memo;
    static std::shared_mutex mutex;

    std::pair<std::uint64_t, std::uint64_t> key{index, input};
    {
        std::shared_lock lock(mutex);
        auto it = memo.find(key);
        if (it != memo.end()) {
            if (it->second.halt_step)
                return *it->second.halt_step <= budget ? it->second.halt_step : std::nullopt;
            if (it->second.no_halt_up_to >= budget) return std::nullopt;
        }
    }
    std::uint64_t run_budget = std::max(budget, kProbeFloor);
    auto r = run_bounded(Nat(index), Nat(input), run_budget);
    {
        std::unique_lock lock(mutex);
        auto& rec = memo[key];
        if (r.ok())
            rec.halt_step = r.halted->steps;
        else
            rec.no_halt_up_to = std::max(rec.no_halt_up_to, run_budget);
    }
    if (r.ok() && r.halted->steps <= budget) return r.halted->steps;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Universal program, S-m-n, two-fold recursion
// ---------------------------------------------------------------------------

Nat universal_index() {
    static const Nat idx = encode(Program{e_eval(e_fst(e_input()), e_snd(e_input()))});
    return idx;
}

Nat smn(const Nat& index, const Nat& fixed) {
    return encode(Program{e_eval(e_const(index), e_pair(e_const(fixed), e_input()))});
}

namespace {

// In-language image of smn(t, w) for a baked index t and runtime input w.
// Mirrors the structural encoding directly: the value computed equals
// encode(eval(const t, pair(const w, input))) because that code never collides
// with the transposed pair {0, omega}.
ExprPtr smn_code_expr(const Nat& t) {
    ExprPtr w = e_input();
    // std(const w) = 14*w + 2
    ExprPtr const_w = e_add(e_mul(e_const(14), std::move(w)), e_const(2));
    // std(pair(const w, input)) = 2 + tagPair + 14 * cantor(std(const w), 0)
    ExprPtr pair_code =
        e_add(e_const(2 + kTagPair), e_mul(e_const(14), e_pair(std::move(const_w), e_const(0))));
    // std(eval(const t, ...)) = 2 + tagEval + 14 * cantor(14*t + 2, pair_code)
    return e_add(e_const(2 + kTagEval),
                 e_mul(e_const(14), e_pair(e_const(14 * t + 2), std::move(pair_code))));
}

}  // namespace

std::pair<Nat, Nat> twofold_fixed_point(const Nat& f1, const Nat& f2) {
    // Four-argument dispatchers, tupled as pair(pair(x1,x2), pair(y1,y2)):
    //   T_a(x1,x2,y1,y2) = T_{T_x1(x1,x2)}(y1,y2)
    //   T_b(x1,x2,y1,y2) = T_{T_x2(x1,x2)}(y1,y2)
    Program ta{e_eval(e_eval(e_fst(e_fst(e_input())), e_fst(e_input())), e_snd(e_input()))};
    Program tb{e_eval(e_eval(e_snd(e_fst(e_input())), e_fst(e_input())), e_snd(e_input()))};
    Nat a = encode(ta);
    Nat b = encode(tb);

    // g_i(x1,x2) = f_i(h1(x1,x2), h2(x1,x2)) with h_t(x1,x2) = smn(t, pair(x1,x2))
    // computed inside the language.
    Program g1{e_eval(e_const(f1), e_pair(smn_code_expr(a), smn_code_expr(b)))};
    Program g2{e_eval(e_const(f2), e_pair(smn_code_expr(a), smn_code_expr(b)))};
    Nat e1 = encode(g1);
    Nat e2 = encode(g2);

    Nat c1 = smn(a, nat_pair(e1, e2));
    Nat c2 = smn(b, nat_pair(e1, e2));
    return {c1, c2};
}

}  // namespace rcpac
