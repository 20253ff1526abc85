// placeholder translation unit; the truncated Fock module lands here
namespace qons {}
