// Copyright 2026 The qarrow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qarrow/evaluator.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace qarrow {

ValuePtr make_bool(bool b) {
    static const ValuePtr t = [] {
        auto v = std::make_shared<Value>();
        v->b = true;
        return v;
    }();
    static const ValuePtr f = std::make_shared<Value>();
    return b ? t : f;
}

ValuePtr make_pair(ValuePtr a, ValuePtr b) {
    auto v = std::make_shared<Value>();
    v->kind = VKind::Pair;
    v->left = std::move(a);
    v->right = std::move(b);
    return v;
}

ValuePtr make_vec(VecVal x) {
    auto v = std::make_shared<Value>();
    v->kind = VKind::Vec;
    v->vec = std::make_shared<const VecVal>(std::move(x));
    return v;
}

ValuePtr make_super(SuperVal s) {
    auto v = std::make_shared<Value>();
    v->kind = VKind::Super;
    v->super = std::make_shared<const SuperVal>(std::move(s));
    return v;
}

namespace {

ValuePtr make_closure(const Pattern &p, const NodePtr &body, const EnvPtr &env) {
    auto v = std::make_shared<Value>();
    v->kind = VKind::Closure;
    v->pat = p;
    v->body = body;
    v->env = env;
    return v;
}

}  // namespace

EnvPtr bind(EnvPtr env, std::string name, ValuePtr v) {
    return std::make_shared<const Env>(Env{std::move(name), std::move(v), std::move(env)});
}

EnvPtr bind_pattern(EnvPtr env, const Pattern &p, const ValuePtr &v) {
    if (p.is_var()) {
        return bind(std::move(env), p.name, v);
    }
    if (v->kind != VKind::Pair) {
        throw EvalError("pattern " + to_string(p) + " applied to a non-pair value");
    }
    env = bind_pattern(std::move(env), p.parts[0], v->left);
    return bind_pattern(std::move(env), p.parts[1], v->right);
}

ValuePtr lookup(const EnvPtr &env, const std::string &name) {
    for (const Env *e = env.get(); e; e = e->next.get()) {
        if (e->name == name) {
            return e->value;
        }
    }
    throw EvalError("unbound variable '" + name + "' at runtime");
}

std::size_t value_index(const ValuePtr &v, const TypePtr &t) {
    if (t->kind == TypeKind::Bool) {
        if (v->kind != VKind::Bool) {
            throw EvalError("expected a boolean value");
        }
        return v->b ? 1 : 0;
    }
    if (t->kind == TypeKind::Prod && v->kind == VKind::Pair) {
        return value_index(v->left, t->a) * dimension(t->b) + value_index(v->right, t->b);
    }
    throw EvalError("value does not match classical type " + to_string(t));
}

ValuePtr value_at(std::size_t index, const TypePtr &t) {
    if (t->kind == TypeKind::Bool) {
        return make_bool(index & 1);
    }
    if (t->kind == TypeKind::Prod) {
        std::size_t db = dimension(t->b);
        return make_pair(value_at(index / db, t->a), value_at(index % db, t->b));
    }
    throw EvalError("not a classical type: " + to_string(t));
}

bool value_equal(const ValuePtr &a, const ValuePtr &b) {
    if (a->kind != b->kind) {
        return false;
    }
    switch (a->kind) {
        case VKind::Bool:
            return a->b == b->b;
        case VKind::Pair:
            return value_equal(a->left, b->left) && value_equal(a->right, b->right);
        default:
            throw EvalError("equality is only defined on classical values");
    }
}

std::string value_to_string(const ValuePtr &v) {
    switch (v->kind) {
        case VKind::Bool:
            return v->b ? "True" : "False";
        case VKind::Pair: {
            std::string s = "(" + value_to_string(v->left);
            ValuePtr rest = v->right;
            while (rest->kind == VKind::Pair) {
                s += ", " + value_to_string(rest->left);
                rest = rest->right;
            }
            return s + ", " + value_to_string(rest) + ")";
        }
        case VKind::Closure:
            return "<function>";
        case VKind::Vec: {
            std::string s = "[";
            for (Eigen::Index i = 0; i < v->vec->amps.size(); ++i) {
                s += (i ? ", " : "") + format_complex(v->vec->amps[i]);
            }
            return s + "]";
        }
        case VKind::Super:
            return "<super " + to_string(v->super->in.type) + " " + to_string(v->super->out.type) + ">";
    }
    return "";
}

ValuePtr apply(const ValuePtr &f, const ValuePtr &arg) {
    if (f->kind != VKind::Closure) {
        throw EvalError("application of a non-function value");
    }
    return eval_term(bind_pattern(f->env, f->pat, arg), f->body);
}

ValuePtr eval_term(const EnvPtr &env, const Term &m) {
    switch (m->kind) {
        case Kind::Var:
            return lookup(env, m->name);
        case Kind::True:
            return make_bool(true);
        case Kind::False:
            return make_bool(false);
        case Kind::Pair:
            return make_pair(eval_term(env, m->kids[0]), eval_term(env, m->kids[1]));
        case Kind::Fst:
        case Kind::Snd: {
            ValuePtr p = eval_term(env, m->kids[0]);
            if (p->kind != VKind::Pair) {
                throw EvalError("projection from a non-pair value");
            }
            return m->kind == Kind::Fst ? p->left : p->right;
        }
        case Kind::Lam:
            return make_closure(m->pat, m->kids[0], env);
        case Kind::App: {
            ValuePtr f = eval_term(env, m->kids[0]);
            return qarrow::apply(f, eval_term(env, m->kids[1]));
        }
        case Kind::Let:
            return eval_term(bind_pattern(env, m->pat, eval_term(env, m->kids[0])), m->kids[1]);
        case Kind::If: {
            ValuePtr c = eval_term(env, m->kids[0]);
            return eval_term(env, m->kids[c->b ? 1 : 2]);
        }
        case Kind::Eq:
            return make_bool(value_equal(eval_term(env, m->kids[0]), eval_term(env, m->kids[1])));
        case Kind::VecUnit: {
            const TypePtr &t = m->kids[0]->ty;
            return make_vec(vec_return(Basis::of(t), value_index(eval_term(env, m->kids[0]), t)));
        }
        case Kind::VecLet: {
            ValuePtr bound = eval_term(env, m->kids[0]);
            const VecVal &v = *bound->vec;
            TypePtr elem = m->kids[0]->ty->a;
            Basis out = Basis::of(m->ty->a);
            return make_vec(vec_bind(
                v,
                [&](std::size_t a) {
                    return *eval_term(bind_pattern(env, m->pat, value_at(a, elem)), m->kids[1])->vec;
                },
                out));
        }
        case Kind::VecAdd:
            return make_vec(vec_add(*eval_term(env, m->kids[0])->vec, *eval_term(env, m->kids[1])->vec));
        case Kind::VecSub:
            return make_vec(vec_sub(*eval_term(env, m->kids[0])->vec, *eval_term(env, m->kids[1])->vec));
        case Kind::VecScale:
            return make_vec(vec_scale(m->scalar, *eval_term(env, m->kids[0])->vec));
        case Kind::MZero:
            return make_vec(vec_zero(Basis::of(m->ty->a)));
        case Kind::ArrowAbs:
            return make_super(eval_classic(translate_term(m), env));
        default:
            throw EvalError(std::string("cannot evaluate a command (") + kind_name(m->kind) + ") as a term");
    }
}

namespace {

using Index = std::uint64_t;
using Sparse = std::map<std::pair<Index, Index>, cplx>;

constexpr double kPrune = 1e-15;

Index dim_of(const TypePtr &t) { return Index{1} << bit_count(t); }

void accumulate(Sparse &out, Index r, Index c, cplx w) { out[{r, c}] += w; }

void prune(Sparse &s) {
    for (auto it = s.begin(); it != s.end();) {
        if (std::abs(it->second) <= kPrune) {
            it = s.erase(it);
        } else {
            ++it;
        }
    }
}

// Applies a combinator tree to sparse densities. Classical maps, lifted
// vectors, and embedded superoperators are computed on demand and cached per
// node, so only the basis elements actually reached are ever evaluated.
class SparseRunner {
   public:
    explicit SparseRunner(EnvPtr env) : env_(std::move(env)) {}

    Sparse run(const ClassicExpr &e, const Sparse &in) {
        Sparse out;
        switch (e.kind) {
            case CKind::Arr: {
                if (!e.body) {
                    return in;
                }
                for (const auto &[rc, w] : in) {
                    accumulate(out, arr_image(e, rc.first), arr_image(e, rc.second), w);
                }
                break;
            }
            case CKind::LiftLin: {
                for (const auto &[rc, w] : in) {
                    const auto &vr = lift_image(e, rc.first);
                    const auto &vc = lift_image(e, rc.second);
                    for (const auto &[i, a] : vr) {
                        for (const auto &[j, b] : vc) {
                            accumulate(out, i, j, w * a * std::conj(b));
                        }
                    }
                }
                break;
            }
            case CKind::Compose:
                return run(*e.kids[1], run(*e.kids[0], in));
            case CKind::First:
                return run_first(*e.kids[0], dim_of(e.in->b), in);
            case CKind::Second: {
                // arr swap >>> first f >>> arr swap
                const ClassicExpr &f = *e.kids[0];
                Index dc = dim_of(e.in->a);
                Index da = dim_of(f.in);
                Index db = dim_of(f.out);
                Sparse swapped;
                for (const auto &[rc, w] : in) {
                    accumulate(swapped, swap(rc.first, dc, da), swap(rc.second, dc, da), w);
                }
                Sparse mid = run_first(f, dc, swapped);
                for (const auto &[rc, w] : mid) {
                    accumulate(out, swap(rc.first, db, dc), swap(rc.second, db, dc), w);
                }
                break;
            }
            case CKind::Fanout: {
                // arr dup >>> first f >>> second g
                const ClassicExpr &f = *e.kids[0];
                const ClassicExpr &g = *e.kids[1];
                Index da = dim_of(e.in);
                Sparse dup;
                for (const auto &[rc, w] : in) {
                    accumulate(dup, rc.first * da + rc.first, rc.second * da + rc.second, w);
                }
                Sparse mid = run_first(f, da, dup);
                Index db = dim_of(f.out);
                Sparse swapped;
                for (const auto &[rc, w] : mid) {
                    accumulate(swapped, swap(rc.first, db, da), swap(rc.second, db, da), w);
                }
                Sparse after = run_first(g, db, swapped);
                Index dc = dim_of(g.out);
                for (const auto &[rc, w] : after) {
                    accumulate(out, swap(rc.first, dc, db), swap(rc.second, dc, db), w);
                }
                break;
            }
            case CKind::Meas: {
                Index d = dim_of(e.in);
                for (const auto &[rc, w] : in) {
                    if (rc.first == rc.second) {
                        Index pair = rc.first * d + rc.first;
                        accumulate(out, pair, pair, w);
                    }
                }
                break;
            }
            case CKind::TrL: {
                Index db = dim_of(e.in->b);
                for (const auto &[rc, w] : in) {
                    if (rc.first / db == rc.second / db) {
                        accumulate(out, rc.first % db, rc.second % db, w);
                    }
                }
                break;
            }
            case CKind::Embed: {
                const EmbedCache &cache = embedded(e);
                Index din = cache.din;
                Index dout = cache.dout;
                for (const auto &[rc, w] : in) {
                    const auto &col = cache.columns[rc.first * din + rc.second];
                    for (const auto &[k, a] : col) {
                        accumulate(out, k / dout, k % dout, w * a);
                    }
                }
                break;
            }
        }
        prune(out);
        return out;
    }

   private:
    struct EmbedCache {
        Index din = 0;
        Index dout = 0;
        std::vector<std::vector<std::pair<Index, cplx>>> columns;
    };

    static Index swap(Index i, Index da, Index db) { return (i % db) * da + i / db; }

    Sparse run_first(const ClassicExpr &f, Index dc, const Sparse &in) {
        // Group entries by their second-component pair (c1, c2).
        std::map<std::pair<Index, Index>, Sparse> groups;
        for (const auto &[rc, w] : in) {
            groups[{rc.first % dc, rc.second % dc}][{rc.first / dc, rc.second / dc}] += w;
        }
        Sparse out;
        for (const auto &[cc, part] : groups) {
            for (const auto &[rc, w] : run(f, part)) {
                accumulate(out, rc.first * dc + cc.first, rc.second * dc + cc.second, w);
            }
        }
        return out;
    }

    Index arr_image(const ClassicExpr &e, Index i) {
        auto &cache = arr_cache_[&e];
        auto it = cache.find(i);
        if (it != cache.end()) {
            return it->second;
        }
        ValuePtr r = eval_term(bind_pattern(env_, e.pat, value_at(i, e.in)), e.body);
        Index out = value_index(r, e.out);
        cache.emplace(i, out);
        return out;
    }

    const std::vector<std::pair<Index, cplx>> &lift_image(const ClassicExpr &e, Index i) {
        auto &cache = lift_cache_[&e];
        auto it = cache.find(i);
        if (it != cache.end()) {
            return it->second;
        }
        ValuePtr r = eval_term(bind_pattern(env_, e.pat, value_at(i, e.in)), e.body);
        std::vector<std::pair<Index, cplx>> entries;
        for (Eigen::Index k = 0; k < r->vec->amps.size(); ++k) {
            cplx a = r->vec->amps[k];
            if (std::abs(a) > kPrune) {
                entries.emplace_back(static_cast<Index>(k), a);
            }
        }
        return cache.emplace(i, std::move(entries)).first->second;
    }

    const EmbedCache &embedded(const ClassicExpr &e) {
        auto it = embed_cache_.find(&e);
        if (it != embed_cache_.end()) {
            return it->second;
        }
        ValuePtr v = eval_term(env_, e.body);
        if (v->kind != VKind::Super) {
            throw EvalError("embedded term is not a superoperator");
        }
        const SuperVal &s = *v->super;
        EmbedCache c;
        c.din = s.in.dim;
        c.dout = s.out.dim;
        c.columns.resize(static_cast<std::size_t>(s.action.cols()));
        for (Eigen::Index col = 0; col < s.action.cols(); ++col) {
            for (Eigen::Index row = 0; row < s.action.rows(); ++row) {
                cplx a = s.action(row, col);
                if (std::abs(a) > kPrune) {
                    c.columns[static_cast<std::size_t>(col)].emplace_back(static_cast<Index>(row), a);
                }
            }
        }
        return embed_cache_.emplace(&e, std::move(c)).first->second;
    }

    EnvPtr env_;
    std::unordered_map<const ClassicExpr *, std::unordered_map<Index, Index>> arr_cache_;
    std::unordered_map<const ClassicExpr *, std::unordered_map<Index, std::vector<std::pair<Index, cplx>>>>
        lift_cache_;
    std::unordered_map<const ClassicExpr *, EmbedCache> embed_cache_;
};

}  // namespace

SuperVal eval_classic(const CExprPtr &e, const EnvPtr &env) {
    Basis in = Basis::of(e->in);
    Basis out = Basis::of(e->out);
    const auto din = static_cast<Index>(in.dim);
    const auto dout = static_cast<Index>(out.dim);
    SuperVal s{in, out,
               Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dout * dout), static_cast<Eigen::Index>(din * din))};
    SparseRunner runner(env);
    for (Index i = 0; i < din; ++i) {
        for (Index j = 0; j < din; ++j) {
            Sparse unit{{{i, j}, cplx(1.0)}};
            for (const auto &[rc, w] : runner.run(*e, unit)) {
                s.action(static_cast<Eigen::Index>(rc.first * dout + rc.second),
                         static_cast<Eigen::Index>(i * din + j)) = w;
            }
        }
    }
    return s;
}

SuperVal eval_classic_dense(const CExprPtr &e, const EnvPtr &env) {
    switch (e->kind) {
        case CKind::Arr: {
            Basis in = Basis::of(e->in);
            Basis out = Basis::of(e->out);
            if (!e->body) {
                return super_identity(in);
            }
            return super_arr(in, out, [&](std::size_t i) {
                return value_index(eval_term(bind_pattern(env, e->pat, value_at(i, e->in)), e->body), e->out);
            });
        }
        case CKind::LiftLin: {
            Basis in = Basis::of(e->in);
            Basis out = Basis::of(e->out);
            return lin2super(lin_from(in, out, [&](std::size_t i) {
                return *eval_term(bind_pattern(env, e->pat, value_at(i, e->in)), e->body)->vec;
            }));
        }
        case CKind::Compose:
            return super_compose(eval_classic_dense(e->kids[0], env), eval_classic_dense(e->kids[1], env));
        case CKind::First:
            return super_first(eval_classic_dense(e->kids[0], env), Basis::of(e->in->b));
        case CKind::Second:
            return super_second(eval_classic_dense(e->kids[0], env), Basis::of(e->in->a));
        case CKind::Fanout:
            return super_fanout(eval_classic_dense(e->kids[0], env), eval_classic_dense(e->kids[1], env));
        case CKind::Meas:
            return super_meas(Basis::of(e->in));
        case CKind::TrL:
            return super_trL(Basis::of(e->in->a), Basis::of(e->in->b));
        case CKind::Embed:
            return *eval_term(env, e->body)->super;
    }
    throw EvalError("unknown combinator");
}

DensVal run(const SuperVal &s, const DensVal &d) { return apply_super(s, d); }

EvaluatedProgram eval_program(const Program &checked, const EnvPtr &base) {
    EvaluatedProgram out;
    out.env = base;
    for (const auto &def : checked.defs) {
        ValuePtr v = eval_term(out.env, def.body);
        out.values[def.name] = v;
        out.env = bind(out.env, def.name, v);
    }
    return out;
}

}  // namespace qarrow
