use bohrnet::contexts::ContextConfig;
use bohrnet::descent::{theorem_check, AdjointOutcome, Biconditional, BohrifiedNet, DEFAULT_COVER_CAP};
use bohrnet::net::{Family, Net, NetSpec};

fn nets(sites: usize) -> Vec<NetSpec> {
    vec![
        NetSpec::spin_chain(sites),
        NetSpec::shared_family(Family::ConstantCommutative, sites),
        NetSpec::shared_family(Family::GlobalQubit, sites),
    ]
}

#[test]
fn axiom_checks_at_four_sites() {
    for spec in nets(4) {
        let net = Net::new(&spec).unwrap();
        assert!(net.check_isotony().unwrap().holds);
        let causal = net.check_causal_locality();
        assert_eq!(causal.holds, net.check_slice_locality().holds, "{:?}", spec.family);
        assert!(net.check_additivity().unwrap().holds);
        let einstein = net.check_einstein_causality().unwrap();
        assert_eq!(einstein.holds(), spec.family == Family::SpinChain);
        assert_eq!(causal.holds, spec.family != Family::GlobalQubit);
    }
}

#[test]
fn bohrified_nets_are_functorial() {
    for spec in nets(3) {
        let net = Net::new(&spec).unwrap();
        let bohr = BohrifiedNet::build(&net, &ContextConfig::default()).unwrap();
        assert!(bohr.is_functorial(&net));
    }
}

#[test]
fn descent_at_three_sites() {
    for spec in nets(3) {
        let net = Net::new(&spec).unwrap();
        let bohr = BohrifiedNet::build(&net, &ContextConfig::default()).unwrap();
        let t = theorem_check(&net, &bohr, DEFAULT_COVER_CAP).unwrap();
        assert_eq!(t.verdict, Biconditional::Consistent);
        assert_eq!(t.all_local(), spec.family == Family::SpinChain);
        for r in &t.descent {
            assert!(r.f_well_defined && r.f_monotone);
            if let AdjointOutcome::Found { law_violations, monotone, agrees_with_join, .. } = &r.adjoint {
                assert_eq!(*law_violations, 0);
                assert!(monotone);
                assert_ne!(*agrees_with_join, Some(false));
                let ff = r.fully_faithful.as_ref().unwrap().holds;
                assert_eq!(ff, r.intersection_identities, "{} on {:?}", r.cover, spec.family);
            }
        }
    }
}

#[test]
fn excluding_the_trivial_context_leaves_f_partial() {
    let net = Net::new(&NetSpec::spin_chain(2)).unwrap();
    let cfg = ContextConfig { include_trivial_context: false, ..ContextConfig::default() };
    let bohr = BohrifiedNet::build(&net, &cfg).unwrap();
    let t = theorem_check(&net, &bohr, DEFAULT_COVER_CAP).unwrap();
    assert!(t.descent.iter().any(|r| !r.f_well_defined));
}
