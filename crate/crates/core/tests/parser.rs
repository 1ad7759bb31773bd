use nars_operant::narsese::{
    parse_line, serialize, Occurrence, ParsedInput, Punctuation, Sentence, Term,
};
use nars_operant::truth::TruthValue;
use proptest::prelude::*;

fn count_ops(t: &Term) -> usize {
    match t {
        Term::Operation(_) => 1,
        Term::Sequence(a, b) | Term::Implication(a, b) => count_ops(a) + count_ops(b),
        _ => 0,
    }
}

fn name() -> impl Strategy<Value = String> {
    "[A-Z][A-Za-z0-9_]{0,3}"
}

fn event_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        name().prop_map(Term::Atom),
        (name(), name()).prop_map(|(s, p)| Term::property(s, p)),
        name().prop_map(Term::Operation),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Term::seq(a, b))
    })
}

fn sentence() -> impl Strategy<Value = Sentence> {
    let term = prop_oneof![
        event_term(),
        (
            event_term().prop_filter("one operation", |t| count_ops(t) <= 1),
            event_term()
        )
            .prop_map(|(a, c)| Term::implication(a, c)),
    ];
    let truth = prop::option::of(
        (0.0f64..=1.0, 0.0f64..1.0).prop_map(|(f, c)| TruthValue::new(f, c).unwrap()),
    );
    (term, any::<bool>(), any::<bool>(), truth).prop_map(|(term, goal, now, truth)| Sentence {
        term,
        punctuation: if goal {
            Punctuation::Goal
        } else {
            Punctuation::Judgment
        },
        truth,
        occurrence: if now {
            Occurrence::Now
        } else {
            Occurrence::Eternal
        },
    })
}

proptest! {
    #[test]
    fn serialized_sentences_parse_back(s in sentence()) {
        let text = serialize(&s);
        prop_assert_eq!(parse_line(&text), Ok(ParsedInput::Sentence(s)));
    }

    #[test]
    fn trailing_comments_are_ignored(s in sentence(), note in "[ -~]{0,20}") {
        let text = format!("{}  // {note}", serialize(&s));
        prop_assert_eq!(parse_line(&text), Ok(ParsedInput::Sentence(s)));
    }

    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,40}") {
        let _ = parse_line(&text);
    }

    #[test]
    fn step_counts_parse(n in 0u64..1_000_000) {
        prop_assert_eq!(parse_line(&n.to_string()), Ok(ParsedInput::StepCount(n)));
    }
}
