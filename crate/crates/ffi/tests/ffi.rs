use std::ffi::{CStr, CString};
use std::ptr;

use hypertree_lab_ffi::*;

fn last_error() -> String {
    let p = htl_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn fano_through_handles() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(htl_construct_fano(&mut x), HtlStatus::Ok);
        let mut b = 0u64;
        assert_eq!(htl_betti(x, 1, 2, &mut b), HtlStatus::Ok);
        assert_eq!(b, 8);
        assert_eq!(htl_betti(x, 1, 0, &mut b), HtlStatus::Ok);
        assert_eq!(b, 8);
        let mut lam = 1u64;
        assert_eq!(htl_lambda(x, 1, -1, 2, &mut lam), HtlStatus::Ok);
        assert_eq!(lam, 0);

        let mut len = 0usize;
        assert_eq!(htl_f_vector(x, ptr::null_mut(), 0, &mut len), HtlStatus::Ok);
        let mut f = vec![0u64; len];
        assert_eq!(htl_f_vector(x, f.as_mut_ptr(), len, &mut len), HtlStatus::Ok);
        assert_eq!(f, [7, 21, 7]);

        let mut json = ptr::null_mut();
        assert_eq!(htl_certificate_json(x, 1, 0, &mut json), HtlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["eq1_holds"], true);
        htl_string_free(json);
        htl_complex_free(x);
    }
}

#[test]
fn top_faces_and_links() {
    // boundary of a tetrahedron as 2-faces on 4 vertices
    let faces: [u32; 12] = [0, 1, 2, 0, 1, 3, 0, 2, 3, 1, 2, 3];
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(htl_complex_from_top_faces(4, 2, faces.as_ptr(), 4, &mut x), HtlStatus::Ok);
        let mut b = 0;
        assert_eq!(htl_betti(x, 2, 3, &mut b), HtlStatus::Ok);
        assert_eq!(b, 1);
        let mut d = 0isize;
        assert_eq!(htl_dim(x, &mut d), HtlStatus::Ok);
        assert_eq!(d, 2);
        // the link of a vertex is a triangle boundary, a cycle and not a tree
        let mut tree = true;
        let v = [0u32];
        assert_eq!(htl_link_is_hypertree(x, v.as_ptr(), 1, 1, 2, &mut tree), HtlStatus::Ok);
        assert!(!tree);
        htl_complex_free(x);

        let mut j = ptr::null_mut();
        assert_eq!(htl_construct_j(8, 2, &mut j), HtlStatus::Ok);
        assert_eq!(htl_link_is_hypertree(j, v.as_ptr(), 1, 1, 2, &mut tree), HtlStatus::Ok);
        assert!(tree);
        htl_complex_free(j);
    }
}

#[test]
fn constructions() {
    unsafe {
        let a = [0u64];
        let mut y = ptr::null_mut();
        assert_eq!(htl_construct_sum(5, a.as_ptr(), 1, 1, &mut y), HtlStatus::Ok);
        let mut b = 0;
        assert_eq!(htl_betti(y, 0, 2, &mut b), HtlStatus::Ok);
        assert_eq!(b, 2);
        htl_complex_free(y);

        let mut x = ptr::null_mut();
        assert_eq!(htl_construct_xnkl(7, 2, 0, 2, &mut x), HtlStatus::Ok);
        let mut lam = 1;
        assert_eq!(htl_lambda(x, 0, 0, 2, &mut lam), HtlStatus::Ok);
        assert_eq!(lam, 0);
        htl_complex_free(x);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut x = ptr::null_mut();
        let bad = CString::new("skeleton 4 1\n0 9\n").unwrap();
        assert_eq!(htl_complex_parse(bad.as_ptr(), &mut x), HtlStatus::InvalidArgument);
        assert!(x.is_null());
        assert!(last_error().contains('9'));

        let text = CString::new("facets 4\n0 1 2\n2 3\n").unwrap();
        assert_eq!(htl_complex_parse(text.as_ptr(), &mut x), HtlStatus::Ok);
        let mut lam = 0;
        assert_eq!(htl_lambda(x, 0, 0, 2, &mut lam), HtlStatus::NotSkeleton);
        let mut b = 0;
        assert_eq!(htl_betti(x, 0, 4, &mut b), HtlStatus::InvalidArgument);
        assert_eq!(htl_betti(x, 0, 2, &mut b), HtlStatus::Ok);
        assert_eq!(b, 0);
        assert_eq!(htl_betti(x, 0, 2, ptr::null_mut()), HtlStatus::NullPointer);
        htl_complex_free(x);

        assert_eq!(htl_betti(ptr::null(), 0, 2, &mut b), HtlStatus::NullPointer);
        assert_eq!(htl_construct_j(7, 2, &mut x), HtlStatus::InvalidArgument);
        htl_complex_free(ptr::null_mut());
        htl_string_free(ptr::null_mut());
        assert!(!CStr::from_ptr(htl_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile_dir();
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        "#include \"hypertree_lab.h\"\nint main(void) { HtlComplex *x = 0; return htl_construct_fano(&x) == HTL_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", include])
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if std::process::Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("htl-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
