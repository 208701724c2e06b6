//! The bundled example corpus, emitted by `trimat fixtures` and
//! addressable from any command as `fixtures:<name>`.

use std::collections::BTreeMap;

use trimat_core::bimodule::Bimodule;
use trimat_core::fixtures;
use trimat_core::invariants::trivial_extension;
use trimat_core::module::RightModule;

use crate::doc::{
    algebra_doc, bimodule_doc, module_doc, AlgebraDoc, ArrowDoc, Document, TripletDoc, SCHEMA,
};

/// Builds the corpus document. Quiver-presented algebras are emitted in
/// quiver form; everything else as structure constants.
pub fn builtin() -> Document {
    let f1 = fixtures::f1();
    let f2 = fixtures::f2();
    let f4 = fixtures::f4();
    let q = fixtures::base_field();

    let mut algebras = BTreeMap::new();
    algebras.insert("f1".into(), algebra_doc(&f1));
    algebras.insert("f2".into(), algebra_doc(&f2));
    algebras.insert(
        "f4".into(),
        AlgebraDoc::Quiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![ArrowDoc {
                name: "a".into(),
                source: "1".into(),
                target: "2".into(),
            }],
            relations: vec![],
            nilpotency_bound: 2,
        },
    );
    algebras.insert("q".into(), algebra_doc(&q));
    algebras.insert(
        "kronecker".into(),
        AlgebraDoc::Quiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![
                ArrowDoc {
                    name: "a".into(),
                    source: "1".into(),
                    target: "2".into(),
                },
                ArrowDoc {
                    name: "b".into(),
                    source: "1".into(),
                    target: "2".into(),
                },
            ],
            relations: vec![],
            nilpotency_bound: 2,
        },
    );
    let trivext_m = trivial_extension(&f4, &fixtures::trivext_bimodule())
        .expect("trivial extension fixture");
    let trivext_dm = trivial_extension(&f4, &fixtures::trivext_bimodule().dual())
        .expect("trivial extension fixture");
    algebras.insert("trivext-M".into(), algebra_doc(&trivext_m));
    algebras.insert("trivext-DM".into(), algebra_doc(&trivext_dm));

    let mut bimodules = BTreeMap::new();
    bimodules.insert("f3".into(), bimodule_doc("f1", "f2", &fixtures::f3()));
    bimodules.insert(
        "m-artin-desk".into(),
        bimodule_doc("f1", "f4", &fixtures::artin_desk_bimodule()),
    );
    bimodules.insert(
        "n-onepoint".into(),
        bimodule_doc("q", "f1", &fixtures::onepoint_bimodule()),
    );
    bimodules.insert(
        "dn-onepoint".into(),
        bimodule_doc("f1", "q", &fixtures::onepoint_bimodule().dual()),
    );
    bimodules.insert(
        "m-trivext".into(),
        bimodule_doc("f4", "f4", &fixtures::trivext_bimodule()),
    );
    bimodules.insert(
        "dm-trivext".into(),
        bimodule_doc("f4", "f4", &fixtures::trivext_bimodule().dual()),
    );

    let mut modules = BTreeMap::new();
    modules.insert("f5".into(), module_doc("f2", &fixtures::f5()));
    modules.insert(
        "f4-simple1".into(),
        module_doc("f4", &fixtures::f4_simple(0)),
    );
    modules.insert(
        "f4-simple2".into(),
        module_doc("f4", &fixtures::f4_simple(1)),
    );
    modules.insert(
        "f4-injective".into(),
        module_doc("f4", &fixtures::f4_injective_cogenerator()),
    );
    modules.insert(
        "f2-regular".into(),
        module_doc("f2", &RightModule::regular(fixtures::f2())),
    );
    modules.insert(
        "f2-injective".into(),
        module_doc("f2", &Bimodule::regular(&fixtures::f2()).dual_as_right_module()),
    );
    modules.insert(
        "q-regular".into(),
        module_doc("q", &RightModule::regular(fixtures::base_field())),
    );

    let mut triplets = BTreeMap::new();
    triplets.insert(
        "ex-matenoneq".into(),
        TripletDoc {
            r: "f1".into(),
            s: "f2".into(),
            m: "f3".into(),
        },
    );
    triplets.insert(
        "artin-desk".into(),
        TripletDoc {
            r: "f1".into(),
            s: "f4".into(),
            m: "m-artin-desk".into(),
        },
    );
    // the one-point coextension [N]R for R = F1, N = k: the S-side is
    // the base field, so the projective-mode pipeline certifies it
    triplets.insert(
        "onepoint".into(),
        TripletDoc {
            r: "f1".into(),
            s: "q".into(),
            m: "dn-onepoint".into(),
        },
    );
    // the matching one-point extension R[N] = (q, f1, n-onepoint)
    triplets.insert(
        "onepoint-ext".into(),
        TripletDoc {
            r: "q".into(),
            s: "f1".into(),
            m: "n-onepoint".into(),
        },
    );

    let mut matrices = BTreeMap::new();
    matrices.insert("c-paper".into(), vec![vec![2, 0], vec![1, 3]]);
    matrices.insert("c-paper-mate".into(), vec![vec![3, 0], vec![1, 2]]);

    Document {
        schema: SCHEMA.into(),
        field: "rational".into(),
        algebras,
        bimodules,
        modules,
        triplets,
        matrices,
    }
}
