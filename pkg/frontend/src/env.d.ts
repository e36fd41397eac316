interface ImportMeta {
  readonly env?: { readonly VITE_API_BASE?: string };
}
