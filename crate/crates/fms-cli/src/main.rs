fn main() {
    println!("fms");
}
