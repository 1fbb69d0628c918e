use std::path::Path;

use num_bigint::BigInt;
use proptest::prelude::*;

use sgps_lab::ast::{EvalVerb, Expr, Stmt, Verb};
use sgps_lab::error::{CliError, Span};
use sgps_lab::exec::{run_session, RunOptions};
use sgps_lab::parser::parse_session;

fn corpus() -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut out: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "sess"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_reparses_to_equal_trees() {
    let files = corpus();
    assert!(files.len() >= 6);
    for (name, src) in files {
        let ast = parse_session(&src).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = ast.to_string();
        let again =
            parse_session(&printed).unwrap_or_else(|e| panic!("{name} reprint: {e}\n{printed}"));
        assert_eq!(again, ast, "{name}");
        assert_eq!(
            again.to_string(),
            printed,
            "{name}: printing is not a fixed point"
        );
    }
}

#[test]
fn four_statement_session() {
    let ast = parse_session(
        "ring R = Zmod(6)\nmonoid M = QNonNeg\ncontext A = R[[M; id]]\nchain A e(1/2^n) n=10",
    )
    .unwrap();
    assert_eq!(ast.items.len(), 4);
    let spans: Vec<Span> = ast.items.iter().map(|i| i.span).collect();
    assert_eq!(
        spans.iter().map(|s| s.line).collect::<Vec<_>>(),
        [1, 2, 3, 4]
    );
    let Stmt::Command(c) = &ast.items[3].stmt else {
        panic!("last item is a command")
    };
    let Verb::Chain { ctx, length, .. } = &c.verb else {
        panic!("chain command")
    };
    assert_eq!((ctx.as_str(), length), ("A", &BigInt::from(10)));
}

#[test]
fn trivial_modulus_is_a_domain_error_with_span() {
    let err = run_session(
        "ring R = Zmod(6)\nring S = Zmod(1)\n",
        RunOptions::default(),
    )
    .unwrap_err();
    let CliError::Domain { span, .. } = &err else {
        panic!("expected a domain error, got {err}")
    };
    assert_eq!(span.line, 2);
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().starts_with("2:"), "{err}");
}

#[test]
fn parse_errors_map_to_exit_code_two() {
    for src in [
        "ring R = Zmod(6",
        "ring R = Z\nring R = Q",
        "mul A : e(1)",
        "chain",
    ] {
        assert_eq!(parse_session(src).unwrap_err().exit_code(), 2, "{src}");
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    let int = (0u32..50).prop_map(|n| Expr::Int(n.into()));
    let exponent = (0u32..9, 1u32..9).prop_map(|(p, q)| {
        Expr::E(Box::new(Expr::Div(
            Box::new(Expr::Int(p.into())),
            Box::new(Expr::Int(q.into())),
        )))
    });
    prop_oneof![
        int.clone(),
        int.prop_map(|e| Expr::C(Box::new(e))),
        exponent,
        Just(Expr::Ident("f".into())),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner, 0u32..4)
                .prop_map(|(a, k)| Expr::Pow(Box::new(a), Box::new(Expr::Int(k.into())))),
        ]
    })
}

const PRELUDE: &str =
    "ring R = Z\nmonoid M = QNonNeg\ncontext A = R[[M; id]]\nlet f = A : c(1) + e(1/2)\n";

proptest! {
    #[test]
    fn printed_expressions_reparse(e in expr()) {
        let src = format!("{PRELUDE}mul A : {e}\n");
        let ast = parse_session(&src).map_err(|err| TestCaseError::fail(format!("{err}\n{src}")))?;
        let Stmt::Command(c) = &ast.items.last().unwrap().stmt else { panic!("command") };
        let Verb::Eval { verb: EvalVerb::Mul, expr, .. } = &c.verb else { panic!("mul") };
        prop_assert_eq!(expr, &e);
        prop_assert_eq!(parse_session(&ast.to_string()).unwrap(), ast);
    }
}
