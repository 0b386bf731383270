import java.util.*;

public class Main {
  public static int go(int[] v, int k) {
    int odd=v.length%2==0 ? 1 : 0;
    int m=v.length;
    int cnt=0;
    while (m>0) {
      m /= 2;
      cnt++;
    }
    return odd+cnt;
  }

  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    int n = sc.nextInt();
    int k = sc.nextInt();
    int[] v = new int[n];
    for (int q = 0; q < n; q++) v[q] = sc.nextInt();
    System.out.println(go(v, k));
  }
}
